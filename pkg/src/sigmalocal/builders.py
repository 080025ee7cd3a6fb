"""Standard permutation realizations of small groups."""

from __future__ import annotations

from dataclasses import dataclass

from .perm import Permutation, PermGroup, parse_cycles


def _cycle(points: list[int], degree: int) -> Permutation:
    images = list(range(degree))
    for a, b in zip(points, points[1:] + points[:1]):
        images[a] = b
    return Permutation(images)


def trivial(degree: int = 1) -> PermGroup:
    return PermGroup([], degree=degree, name="C1")


def cyclic(n: int) -> PermGroup:
    """Regular action of C_n on n points."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return trivial()
    return PermGroup([_cycle(list(range(n)), n)], name=f"C{n}")


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order 2n (symmetries of the n-gon for n >= 3)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return PermGroup([_cycle([0, 1], 2)], name="D2")
    if n == 2:
        return PermGroup([parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)],
                         name="D4")
    rot = _cycle(list(range(n)), n)
    refl = Permutation([(-i) % n for i in range(n)])
    return PermGroup([rot, refl], name=f"D{2 * n}")


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return trivial()
    if n == 2:
        return PermGroup([_cycle([0, 1], 2)], name="S2")
    return PermGroup([_cycle(list(range(n)), n), _cycle([0, 1], n)], name=f"S{n}")


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be positive")
    if n <= 2:
        return PermGroup([], degree=n, name=f"A{n}")
    gens = [_cycle([0, 1, i], n) for i in range(2, n)]
    return PermGroup(gens, name=f"A{n}")


def elementary_abelian(p: int, k: int) -> PermGroup:
    """``C_p^k`` acting on ``k`` disjoint orbits of length ``p``."""
    if k == 0:
        return trivial()
    gens = [_cycle(list(range(i * p, (i + 1) * p)), p * k) for i in range(k)]
    return PermGroup(gens, name=f"{p}^{k}" if k > 1 else f"C{p}")


def quaternion(order: int = 8) -> PermGroup:
    """Generalized quaternion (dicyclic) group of the given order, regular action."""
    if order % 4 or order < 8:
        raise ValueError("order must be a multiple of 4, at least 8")
    n = order // 4
    # elements a^i x^j, i < 2n, j < 2; x^2 = a^n, x a x^-1 = a^-1
    def idx(i, j):
        return (i % (2 * n)) + 2 * n * j

    def left_a(e):
        i, j = e % (2 * n), e // (2 * n)
        return idx(i + 1, j)

    def left_x(e):
        i, j = e % (2 * n), e // (2 * n)
        return idx(-i, 1) if j == 0 else idx(n - i, 0)

    size = 4 * n
    a = Permutation([left_a(e) for e in range(size)])
    x = Permutation([left_x(e) for e in range(size)])
    name = "Q8" if order == 8 else f"Dic{order}"
    return PermGroup([a, x], name=name)


def affine(p: int, d: int | None = None) -> PermGroup:
    """``C_p x| C_d`` acting on the points of GF(p); ``d`` divides ``p - 1``."""
    d = p - 1 if d is None else d
    if (p - 1) % d:
        raise ValueError("d must divide p - 1")
    # a primitive root generates the multiplicative group
    g = next(r for r in range(2, p + 1)
             if all(pow(r, (p - 1) // q, p) != 1 for q in _prime_divisors(p - 1))) if p > 2 else 1
    w = pow(g, (p - 1) // d, p)
    shift = Permutation([(x + 1) % p for x in range(p)])
    gens = [shift]
    if d > 1:
        gens.append(Permutation([(w * x) % p for x in range(p)]))
    return PermGroup(gens, name=f"C{p}:C{d}")


def _prime_divisors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def agl1_8() -> PermGroup:
    """``2^3 x| C_7`` acting on GF(8): translations and multiplication by a generator."""
    # GF(8) = GF(2)[t]/(t^3 + t + 1), elements encoded as 3-bit integers
    def mul_t(x):
        x <<= 1
        if x & 8:
            x ^= 0b1011
        return x

    gens = [Permutation([x ^ b for x in range(8)]) for b in (1, 2, 4)]
    gens.append(Permutation([mul_t(x) for x in range(8)]))
    return PermGroup(gens, name="2^3:7")


def sl2_3() -> PermGroup:
    """SL(2,3) acting on the 8 nonzero vectors of GF(3)^2."""
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def act(m):
        return Permutation([pos[((m[0] * a + m[1] * b) % 3, (m[2] * a + m[3] * b) % 3)]
                            for a, b in vecs])

    return PermGroup([act((1, 1, 0, 1)), act((1, 0, 1, 1))], name="SL(2,3)")


def direct_product(*groups: PermGroup) -> PermGroup:
    """Factors act on consecutive disjoint point ranges."""
    degree = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            images = list(range(degree))
            for i, y in enumerate(g.images):
                images[offset + i] = offset + y
            gens.append(Permutation(images))
        offset += G.degree
    names = [G.name or "?" for G in groups]
    return PermGroup(gens, degree=degree, name="x".join(names))


@dataclass(frozen=True)
class WreathProduct:
    group: PermGroup
    base: PermGroup
    top: PermGroup


def regular_wreath(A: PermGroup, G: PermGroup) -> WreathProduct:
    """``A wr G`` with the base ``A^|G|`` permuted by the right regular action of ``G``.

    Point ``(h, x)`` (copy ``h`` of ``A``'s domain) is encoded as ``h * deg(A) + x``.
    """
    elems = list(G.elements())
    index = {g: i for i, g in enumerate(elems)}
    m = len(elems)
    d = A.degree
    degree = m * d
    base_gens = []
    for h in range(m):
        for a in A.generators:
            images = list(range(degree))
            for x in range(d):
                images[h * d + x] = h * d + a.images[x]
            base_gens.append(Permutation(images))
    top_gens = []
    for s in G.generators:
        images = [0] * degree
        for h, g in enumerate(elems):
            target = index[g * s]
            for x in range(d):
                images[h * d + x] = target * d + x
        top_gens.append(Permutation(images))
    name = f"{A.name or '?'}wr{G.name or '?'}"
    W = PermGroup(base_gens + top_gens, degree=degree, name=name)
    return WreathProduct(W, PermGroup(base_gens, degree=degree, name="base"),
                         PermGroup(top_gens, degree=degree, name="top"))


def regular_representation(G: PermGroup) -> PermGroup:
    """``G`` acting on itself by left multiplication."""
    elems = list(G.elements())
    index = {g: i for i, g in enumerate(elems)}
    gens = [Permutation([index[s * g] for g in elems]) for s in G.generators]
    return PermGroup(gens, degree=len(elems), name=f"reg({G.name or '?'})")


class GroupNameError(ValueError):
    pass


def _atom_from_name(name: str) -> PermGroup:
    import re

    fixed = {"Q8": lambda: quaternion(8), "SL(2,3)": sl2_3, "AGL(1,8)": agl1_8,
             "V4": lambda: dihedral(2), "1": trivial}
    if name in fixed:
        G = fixed[name]()
    elif m := re.fullmatch(r"([CSA])(\d+)", name):
        kind, n = m.group(1), int(m.group(2))
        G = {"C": cyclic, "S": symmetric, "A": alternating}[kind](n)
    elif m := re.fullmatch(r"D(\d+)", name):
        n = int(m.group(1))
        if n % 2 or n < 2:
            raise GroupNameError(f"dihedral groups have even order: {name!r}")
        G = dihedral(n // 2)
    elif m := re.fullmatch(r"Dic(\d+)", name):
        G = quaternion(int(m.group(1)))
    elif m := re.fullmatch(r"(\d+)\^(\d+)", name):
        G = elementary_abelian(int(m.group(1)), int(m.group(2)))
    elif m := re.fullmatch(r"F(\d+):(\d+)", name):
        G = affine(int(m.group(1)), int(m.group(2)))
    else:
        raise GroupNameError(f"unknown group name {name!r}")
    return G


def from_name(name: str) -> PermGroup:
    """Build a group from a short name.

    Atoms: ``C6``, ``S4``, ``A5``, ``D8`` (order 8), ``Q8``, ``Dic12``, ``2^3``,
    ``F7:3``, ``V4``, ``SL(2,3)``, ``AGL(1,8)``.  ``AwrB`` is the regular
    wreath product and ``AxB`` the direct product (``wr`` binds tighter).
    Wreath chains group to the right: ``C2wrC2wrC2`` is ``C2 wr (C2 wr C2)``.
    """
    name = name.strip()
    try:
        factors = [f for f in _split_product(name)]
        groups = []
        for f in factors:
            parts = f.split("wr")
            G = _atom_from_name(parts[-1])
            for left in reversed(parts[:-1]):
                G = regular_wreath(_atom_from_name(left), G).group
            groups.append(G)
    except (ValueError, IndexError) as e:
        if isinstance(e, GroupNameError):
            raise
        raise GroupNameError(f"cannot build {name!r}: {e}") from None
    G = groups[0] if len(groups) == 1 else direct_product(*groups)
    G.name = name
    return G


def _split_product(name: str) -> list[str]:
    # split on 'x' outside parentheses
    out, depth, cur = [], 0, ""
    for ch in name:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "x" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    if any(not f for f in out):
        raise GroupNameError(f"empty factor in {name!r}")
    return out
