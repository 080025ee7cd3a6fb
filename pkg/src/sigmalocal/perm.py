"""Permutations and permutation groups with a deterministic stabilizer chain.

Points are 0-based internally.  Cycle notation (``"(1 2)(3 4)"``, identity
``"()"``) is 1-based, matching the group file format.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Iterator, Sequence

ENUMERATION_BOUND = 20000


class DegreeError(ValueError):
    pass


class EnumerationBoundError(RuntimeError):
    pass


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p o q)(x) = p(q(x))
    return tuple([p[y] for y in q])


def _invert(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, y in enumerate(p):
        out[y] = i
    return tuple(out)


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as an image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        if not images:
            raise ValueError("degree must be positive")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Permutation:
        p = cls.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Permutation:
        return parse_cycles(text, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return self.inverse()

    def inverse(self) -> Permutation:
        return Permutation._trusted(_invert(self.images))

    def __pow__(self, k: int) -> Permutation:
        result = Permutation.identity(self.degree)
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == y for i, y in enumerate(self.images))

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles()), 1)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point (0-based)."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p o q``, i.e. apply ``q`` first."""
    if p.degree != q.degree:
        raise DegreeError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation._trusted(_compose(p.images, q.images))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as ``"(1 2)(3 4)"`` or ``"()"``."""
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty permutation text")
    pos = 0
    images = list(range(degree))
    seen: set[int] = set()
    for m in _CYCLE_RE.finditer(stripped):
        if stripped[pos:m.start()].strip():
            raise ValueError(f"malformed cycle notation: {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(x) - 1 for x in body]
        except ValueError:
            raise ValueError(f"malformed cycle notation: {text!r}") from None
        for x in pts:
            if not 0 <= x < degree:
                raise DegreeError(f"point {x + 1} outside 1..{degree} in {text!r}")
            if x in seen:
                raise ValueError(f"point {x + 1} repeated in {text!r}")
            seen.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    if stripped[pos:].strip() or pos == 0:
        raise ValueError(f"malformed cycle notation: {text!r}")
    return Permutation._trusted(tuple(images))


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[tuple[int, ...]] = []
        # orbit point -> u with u(point) == orbit point, insertion order is BFS order
        self.transversal: dict[int, tuple[int, ...]] = {}


class StabilizerChain:
    """Base and strong generating set built by deterministic Schreier-Sims."""

    def __init__(self, degree: int, generators: Iterable[tuple[int, ...]]):
        self.degree = degree
        self.identity = tuple(range(degree))
        gens = [g for g in generators if g != self.identity]
        self.levels: list[_Level] = []
        for g in gens:
            if all(g[lv.point] == lv.point for lv in self.levels):
                self.levels.append(_Level(_first_moved(g)))
        for i, lv in enumerate(self.levels):
            base = [l.point for l in self.levels[:i]]
            lv.gens = [g for g in gens if all(g[b] == b for b in base)]
            self._orbit(lv)
        self._complete()

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def _orbit(self, lv: _Level) -> None:
        trans = {lv.point: self.identity}
        queue = [lv.point]
        for x in queue:
            u = trans[x]
            for g in lv.gens:
                y = g[x]
                if y not in trans:
                    trans[y] = _compose(g, u)
                    queue.append(y)
        lv.transversal = trans

    def sift(self, g: tuple[int, ...], start: int = 0) -> tuple[tuple[int, ...], int]:
        """Strip ``g`` through the chain from level ``start``.

        Returns the residue and the level where sifting stopped (``len(levels)``
        when every level was passed).
        """
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            b = g[lv.point]
            u = lv.transversal.get(b)
            if u is None:
                return g, i
            g = _compose(_invert(u), g)
        return g, len(self.levels)

    def _complete(self) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            restart = None
            lv = self.levels[i]
            for b, u in list(lv.transversal.items()):
                for s in lv.gens:
                    sb = s[b]
                    h = _compose(_invert(lv.transversal[sb]), _compose(s, u))
                    r, j = self.sift(h, i + 1)
                    if r != self.identity:
                        restart = (r, j)
                        break
                if restart:
                    break
            if restart is None:
                i -= 1
                continue
            r, j = restart
            if j == len(self.levels):
                self.levels.append(_Level(_first_moved(r)))
            for l in range(i + 1, j + 1):
                self.levels[l].gens.append(r)
                self._orbit(self.levels[l])
            i = j

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.transversal)
        return n

    def contains(self, g: tuple[int, ...]) -> bool:
        r, _ = self.sift(g)
        return r == self.identity

    def elements(self) -> Iterator[tuple[int, ...]]:
        """Each element once, as ``u_0 o u_1 o ... o u_k``; identity first."""
        if not self.levels:
            yield self.identity
            return
        transversals = [list(lv.transversal.values()) for lv in self.levels]
        for combo in itertools.product(*transversals):
            g = combo[-1]
            for u in reversed(combo[:-1]):
                g = _compose(u, g)
            yield g


def _first_moved(g: tuple[int, ...]) -> int:
    for i, y in enumerate(g):
        if i != y:
            return i
    raise ValueError("identity moves no point")


class PermGroup:
    """A finite permutation group given by generators.

    Immutable after construction; the stabilizer chain is built on first use.
    Derived data (element table, subgroup lattice) is memoized in ``_cache``.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None,
                 name: str | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generator list")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeError(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name
        self._chain: StabilizerChain | None = None
        self._cache: dict = {}

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, (g.images for g in self.generators))
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __len__(self) -> int:
        return self.order()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        return self.chain.contains(p.images)

    __contains__ = contains

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def elements(self, bound: int = ENUMERATION_BOUND) -> Iterator[Permutation]:
        if self.order() > bound:
            raise EnumerationBoundError(f"group order {self.order()} exceeds enumeration bound {bound}")
        for g in self.chain.elements():
            yield Permutation._trusted(g)

    def is_trivial(self) -> bool:
        return self.order() == 1

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"<PermGroup {label}degree={self.degree} order={self.order()}>"


def group_from_generators(gens: Iterable[Permutation], degree: int | None = None,
                          name: str | None = None) -> PermGroup:
    return PermGroup(gens, degree=degree, name=name)


def order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, p: Permutation) -> bool:
    return G.contains(p)


def elements(G: PermGroup, bound: int = ENUMERATION_BOUND) -> Iterator[Permutation]:
    return G.elements(bound)


def closure_elements(gens: Iterable[Permutation], degree: int,
                     bound: int = ENUMERATION_BOUND) -> set[tuple[int, ...]]:
    """Brute-force closure of ``gens`` under composition; independent of the chain."""
    gens_t = [g.images for g in gens]
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens_t:
                y = _compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > bound:
                        raise EnumerationBoundError(f"closure exceeds {bound} elements")
        frontier = nxt
    return seen
