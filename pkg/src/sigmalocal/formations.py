"""Classes of groups as membership oracles, their products and residuals,
formation functions on partition blocks, and local-formation membership."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .lattice import Section
from .sigma import (RESIDUAL, Block, BlockSet, SigmaPartition, blockset, pi_of,
                    sigma_of)
from . import sigma_classes as sc
from . import structure as st
from .structure import GroupLike, as_section


class ResidualError(RuntimeError):
    """The intersection of all normal subgroups with quotient in the class
    does not itself have quotient in the class."""


@dataclass(frozen=True, eq=False)
class GroupClass:
    """A named, isomorphism-invariant membership test.

    ``claims`` lists closure properties asserted for the class (formation,
    hereditary, saturated); they are checked empirically, never relied on.
    """

    name: str
    test: Callable[[Section, SigmaPartition], bool] = field(repr=False)
    claims: frozenset[str] = frozenset()

    def member(self, G: GroupLike, sigma: SigmaPartition) -> bool:
        S = as_section(G)
        return S.memo(("class", self.name, sigma), lambda: bool(self.test(S, sigma)))

    __call__ = member

    def __and__(self, other: GroupClass) -> GroupClass:
        return intersection(self, other)

    def __str__(self) -> str:
        return self.name


def intersection(*classes: GroupClass) -> GroupClass:
    name = "(" + " & ".join(c.name for c in classes) + ")"
    claims = frozenset.intersection(*(c.claims for c in classes))
    return GroupClass(name, lambda S, s: all(c.member(S, s) for c in classes), claims)


EMPTY = GroupClass("Empty", lambda S, s: False, frozenset({"hereditary"}))


def _fmt_primes(primes) -> str:
    return ",".join(str(p) for p in sorted(primes))


def _derived(S: Section) -> Section:
    return S.sub(S.commutator_subgroup())


def _pi_soluble(S: Section, primes: frozenset[int]) -> bool:
    # each chief factor is a pi'-group or a p-group with p in pi
    for f in S.chief_factor_orders():
        ps = pi_of(f)
        if ps & primes and len(ps) > 1:
            return False
    return True


def _meta_pi_special(S: Section, primes: frozenset[int]) -> bool:
    for k in S.normal_subgroups():
        k = int(k)
        if sc.is_pi_special(S.sub(k), primes) and sc.is_pi_special(S.quotient(k), primes):
            return True
    return False


_STATIC = {
    "identity": ("I", lambda S, s: S.order == 1, {"formation", "hereditary", "saturated"}),
    "all": ("All", lambda S, s: True, {"formation", "hereditary", "saturated"}),
    "abelian": ("A", lambda S, s: st.is_abelian(S), {"formation", "hereditary"}),
    "nilpotent": ("N", lambda S, s: st.is_nilpotent(S), {"formation", "hereditary", "saturated"}),
    "soluble": ("S", lambda S, s: st.is_soluble(S), {"formation", "hereditary", "saturated"}),
    "supersoluble": ("U", lambda S, s: st.is_supersoluble(S),
                     {"formation", "hereditary", "saturated"}),
    "metanilpotent": ("N2", lambda S, s: st.is_metanilpotent(S),
                      {"formation", "hereditary", "saturated"}),
    "derived_nilpotent": ("DerivedN", lambda S, s: st.is_nilpotent(_derived(S)),
                          {"formation", "hereditary", "saturated"}),
    "sigma_nilpotent": ("Nsigma", lambda S, s: sc.is_sigma_nilpotent(S, s),
                        {"formation", "hereditary", "saturated"}),
    "meta_sigma_nilpotent": ("Nsigma2", lambda S, s: sc.is_meta_sigma_nilpotent(S, s),
                             {"formation", "hereditary", "saturated"}),
    "sigma_soluble": ("Ssigma", lambda S, s: sc.is_sigma_soluble(S, s),
                      {"formation", "hereditary", "saturated"}),
}

_ALIASES = {
    "I": "identity", "All": "all", "A": "abelian", "N": "nilpotent", "S": "soluble",
    "U": "supersoluble", "N2": "metanilpotent", "DerivedN": "derived_nilpotent",
    "Nsigma": "sigma_nilpotent", "Nsigma2": "meta_sigma_nilpotent",
    "Ssigma": "sigma_soluble",
}

_CACHE: dict = {}


def builtin(name: str, Pi: BlockSet | None = None, primes: Iterable[int] | None = None) -> GroupClass:
    """Builtin classes.

    Parameterless: identity, all, abelian, nilpotent, soluble, supersoluble,
    metanilpotent, derived_nilpotent, sigma_nilpotent, meta_sigma_nilpotent,
    sigma_soluble.  With ``Pi``: G_Pi, S_Pi, sigma_soluble_pi_closed.  With
    ``primes``: pi_special, meta_pi_special, derived_pi_special, pi_soluble.
    """
    name = _ALIASES.get(name, name)
    key = (name, Pi, frozenset(primes) if primes is not None else None)
    if key in _CACHE:
        return _CACHE[key]
    if name in _STATIC:
        short, test, claims = _STATIC[name]
        cls = GroupClass(short, test, frozenset(claims))
    elif name in ("G_Pi", "S_Pi", "sigma_soluble_pi_closed"):
        if Pi is None:
            raise ValueError(f"{name} needs a block set Pi")
        P = Pi
        if name == "G_Pi":
            cls = GroupClass(f"GPi{P}",
                             lambda S, s: all(b in P for b in sigma_of(S.order, s)),
                             frozenset({"formation", "hereditary", "saturated"}))
        elif name == "S_Pi":
            cls = GroupClass(f"SPi{P}",
                             lambda S, s: all(b in P for b in sigma_of(S.order, s))
                             and sc.is_sigma_soluble(S, s),
                             frozenset({"formation", "hereditary", "saturated"}))
        else:
            cls = GroupClass(f"SsigmaClosed{P}",
                             lambda S, s: sc.is_sigma_soluble(S, s) and sc.is_pi_closed(S, P, s),
                             frozenset({"formation", "hereditary", "saturated"}))
    elif name in ("pi_special", "meta_pi_special", "derived_pi_special", "pi_soluble"):
        if primes is None:
            raise ValueError(f"{name} needs a prime set")
        ps = frozenset(primes)
        tag = _fmt_primes(ps)
        if name == "pi_special":
            cls = GroupClass(f"PiSpecial[{tag}]", lambda S, s: sc.is_pi_special(S, ps),
                             frozenset({"formation", "hereditary", "saturated"}))
        elif name == "meta_pi_special":
            cls = GroupClass(f"MetaPiSpecial[{tag}]", lambda S, s: _meta_pi_special(S, ps),
                             frozenset({"formation", "hereditary", "saturated"}))
        elif name == "derived_pi_special":
            cls = GroupClass(f"DerivedPiSpecial[{tag}]",
                             lambda S, s: sc.is_pi_special(_derived(S), ps),
                             frozenset({"formation", "hereditary"}))
        else:
            cls = GroupClass(f"PiSoluble[{tag}]", lambda S, s: _pi_soluble(S, ps),
                             frozenset({"formation", "hereditary", "saturated"}))
    else:
        raise KeyError(f"unknown class {name!r}")
    _CACHE[key] = cls
    return cls


def class_product(M: GroupClass, H: GroupClass) -> GroupClass:
    """``MH``: some normal ``N`` with ``N in M`` and ``G/N in H``."""
    def test(S: Section, sigma: SigmaPartition) -> bool:
        for k in S.normal_subgroups():
            k = int(k)
            if H.member(S.quotient(k), sigma) and M.member(S.sub(k), sigma):
                return True
        return False
    return GroupClass(f"({M.name} {H.name})", test)


def _residual_id(S: Section, F: GroupClass, sigma: SigmaPartition) -> int:
    def compute():
        good = [int(k) for k in S.normal_subgroups() if F.member(S.quotient(int(k)), sigma)]
        if not good:
            raise ResidualError(f"no quotient of this group lies in {F.name}")
        D = S.meet(good)
        if not F.member(S.quotient(D), sigma):
            raise ResidualError(f"class {F.name} not intersection-closed on this group")
        return D
    return S.memo(("residual", F.name, sigma), compute)


def residual(G: GroupLike, F: GroupClass, sigma: SigmaPartition):
    """Smallest normal subgroup with quotient in ``F``."""
    S = as_section(G)
    return st._out(G, _residual_id(S, F, sigma))


def gaschuetz_product(M: GroupClass, H: GroupClass) -> GroupClass:
    """``M o H``: the ``H``-residual lies in ``M``."""
    def test(S: Section, sigma: SigmaPartition) -> bool:
        return M.member(S.sub(_residual_id(S, H, sigma)), sigma)
    return GroupClass(f"({M.name} o {H.name})", test)


@dataclass(frozen=True, eq=False)
class FormationSigmaFunction:
    """Assigns a class (or nothing) to each block; ``default`` covers unlisted blocks."""

    assignment: Mapping[Block, GroupClass | None] = field(default_factory=dict)
    default: GroupClass | None = None

    def __call__(self, block: Block) -> GroupClass | None:
        if block in self.assignment:
            return self.assignment[block]
        return self.default

    def support(self, blocks: Iterable[Block]) -> set[Block]:
        return {b for b in blocks if self(b) is not None}

    def __str__(self) -> str:
        parts = [f"{b}->{c.name if c else 'Empty'}"
                 for b, c in sorted(self.assignment.items(), key=lambda kv: kv[0].sort_key())]
        if self.default is not None or not parts:
            parts.append(f"*->{self.default.name if self.default else 'Empty'}")
        return "f: " + ", ".join(parts)


def constant(cls: GroupClass | None) -> FormationSigmaFunction:
    return FormationSigmaFunction({}, cls)


def lf_sigma_member(G: GroupLike, f: FormationSigmaFunction, sigma: SigmaPartition) -> bool:
    """``G = 1`` or ``G / O_{b',b}(G) in f(b)`` for every block ``b`` meeting ``|G|``."""
    S = as_section(G)
    if S.is_trivial():
        return True
    for b in sigma_of(S.order, sigma):
        cls = f(b)
        if cls is None:
            return False
        top = sc._O_prime_block_id(S, b, sigma)
        if not cls.member(S.quotient(top), sigma):
            return False
    return True


def lf_class(f: FormationSigmaFunction) -> GroupClass:
    return GroupClass(f"LF({f})", lambda S, s: lf_sigma_member(S, f, s),
                      frozenset({"formation", "saturated"}))


def lemma23_classes(block: Block, f: FormationSigmaFunction) -> GroupClass:
    """``(G_{b'} G_b) f(b)`` for one block."""
    Pi = BlockSet(frozenset([block]))
    inner = class_product(builtin("G_Pi", Pi=Pi.prime()), builtin("G_Pi", Pi=Pi))
    return class_product(inner, f(block) or EMPTY)


def lemma23_equivalence_check(G: GroupLike, f: FormationSigmaFunction,
                              sigma: SigmaPartition) -> bool:
    """Whether LF membership equals membership in every per-block triple product."""
    S = as_section(G)
    lhs = lf_sigma_member(S, f, sigma)
    rhs = all(lemma23_classes(b, f).member(S, sigma) for b in sigma_of(S.order, sigma))
    return lhs == rhs


# empirical closure reports

@dataclass
class PropertyReport:
    property: str
    class_name: str
    sigma: str
    groups_checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _groups(corpus) -> Iterable[tuple[str, object]]:
    if hasattr(corpus, "groups"):
        return corpus.groups()
    if isinstance(corpus, Mapping):
        return corpus.items()
    return [(getattr(G, "name", None) or f"g{i}", G) for i, G in enumerate(corpus)]


def is_saturated_on(F: GroupClass, corpus, sigma: SigmaPartition) -> PropertyReport:
    """``G/Phi(G) in F`` implies ``G in F``."""
    rep = PropertyReport("saturated", F.name, str(sigma))
    for gid, G in _groups(corpus):
        S = as_section(G)
        rep.groups_checked += 1
        if F.member(S.quotient(S.frattini()), sigma) and not F.member(S, sigma):
            rep.violations.append(gid)
    return rep


def is_formation_on(F: GroupClass, corpus, sigma: SigmaPartition) -> PropertyReport:
    """Quotient closure, and ``G/N, G/R in F`` implies ``G/(N cap R) in F``."""
    rep = PropertyReport("formation", F.name, str(sigma))
    for gid, G in _groups(corpus):
        S = as_section(G)
        rep.groups_checked += 1
        normals = [int(k) for k in S.normal_subgroups()]
        inF = {k: F.member(S.quotient(k), sigma) for k in normals}
        bad = False
        if inF[S.bottom] and not all(inF.values()):
            bad = True
        good = [k for k in normals if inF[k]]
        for i, a in enumerate(good):
            if bad:
                break
            for b in good[i + 1:]:
                if not inF[S.meet([a, b])]:
                    bad = True
                    break
        if bad:
            rep.violations.append(gid)
    return rep


def is_hereditary_on(F: GroupClass, corpus, sigma: SigmaPartition) -> PropertyReport:
    """``G in F`` implies every subgroup is in ``F``."""
    rep = PropertyReport("hereditary", F.name, str(sigma))
    for gid, G in _groups(corpus):
        S = as_section(G)
        rep.groups_checked += 1
        if F.member(S, sigma):
            if not all(F.member(S.sub(int(k)), sigma) for k in S.subgroups()):
                rep.violations.append(gid)
    return rep


# class-expression syntax

class ClassSyntaxError(ValueError):
    pass


_NAME_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)('?)(?:\[([0-9,\s]*)\])?$")


def _pi_from_primes(primes: list[int], sigma: SigmaPartition) -> BlockSet:
    return BlockSet(frozenset(sigma.block_of(p) for p in primes))


def parse_class(text: str, sigma: SigmaPartition) -> GroupClass:
    """Parse a class expression.

    Names (``Nsigma``, ``U``, ``GPi[2,3]``, ``GPi'[5]``, ``PiSpecial[2,3]``),
    class products ``X * Y``, Gaschuetz products ``X o Y``, intersections
    ``X & Y``, parentheses, and ``LF(f: {2}->N, rest->N)`` where ``{p,...}``
    names the block containing those primes, ``rest`` the residual block and
    ``*`` every block not listed.
    """
    toks = _tokenize(text)
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else None

    def take(expected=None):
        t = peek()
        if t is None or (expected is not None and t != expected):
            raise ClassSyntaxError(f"expected {expected!r} in {text!r}, got {t!r}")
        pos[0] += 1
        return t

    def expr():
        left = term()
        while peek() == "&":
            take()
            left = intersection(left, term())
        return left

    def term():
        left = atom()
        while peek() in ("*", "o"):
            op = take()
            right = atom()
            left = class_product(left, right) if op == "*" else gaschuetz_product(left, right)
        return left

    def atom():
        t = peek()
        if t == "(":
            take()
            c = expr()
            take(")")
            return c
        if t == "LF":
            take()
            take("(")
            return lf()
        take()
        return _named(t, sigma, text)

    def lf():
        if peek() == "f":
            take()
            take(":")
        assignment = {}
        default = None
        while True:
            key = take()
            take("->")
            if peek() == "Empty":
                take()
                cls = None
            else:
                cls = expr()
            if key == "*":
                default = cls
            elif key == "rest":
                if sigma.mode == "canonical_sigma1":
                    default = cls
                else:
                    assignment[RESIDUAL] = cls
            elif key.startswith("{"):
                try:
                    ps = [int(x) for x in key[1:-1].split(",") if x.strip()]
                except ValueError:
                    raise ClassSyntaxError(f"bad block {key!r}") from None
                blocks = {sigma.block_of(p) for p in ps}
                if len(blocks) != 1:
                    raise ClassSyntaxError(f"{key} does not name a single block of {sigma}")
                assignment[blocks.pop()] = cls
            else:
                raise ClassSyntaxError(f"bad block key {key!r}")
            if peek() == ",":
                take()
                continue
            take(")")
            break
        return lf_class(FormationSigmaFunction(assignment, default))

    c = expr()
    if peek() is not None:
        raise ClassSyntaxError(f"trailing input {peek()!r} in {text!r}")
    return c


_TOKEN_RE = re.compile(r"\s*(->|\{[0-9,\s]*\}|[A-Za-z_][A-Za-z0-9_]*'?(?:\[[0-9,\s]*\])?|[()*&,:])")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ClassSyntaxError(f"cannot tokenize {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _named(tok: str, sigma: SigmaPartition, text: str) -> GroupClass:
    m = _NAME_RE.match(tok)
    if not m:
        raise ClassSyntaxError(f"bad class name {tok!r} in {text!r}")
    base, prime, args = m.groups()
    primes = [int(x) for x in args.split(",") if x.strip()] if args is not None else None
    if base in ("GPi", "SPi", "SsigmaClosed"):
        if primes is None:
            raise ClassSyntaxError(f"{base} needs primes, e.g. {base}[2,3]")
        Pi = _pi_from_primes(primes, sigma)
        if prime:
            Pi = Pi.prime()
        kind = {"GPi": "G_Pi", "SPi": "S_Pi", "SsigmaClosed": "sigma_soluble_pi_closed"}[base]
        return builtin(kind, Pi=Pi)
    if base in ("PiSpecial", "MetaPiSpecial", "DerivedPiSpecial", "PiSoluble"):
        if primes is None:
            raise ClassSyntaxError(f"{base} needs primes")
        kind = {"PiSpecial": "pi_special", "MetaPiSpecial": "meta_pi_special",
                "DerivedPiSpecial": "derived_pi_special", "PiSoluble": "pi_soluble"}[base]
        return builtin(kind, primes=primes)
    if prime or args is not None:
        raise ClassSyntaxError(f"{base} takes no parameters")
    if base == "Empty":
        return EMPTY
    try:
        return builtin(base)
    except KeyError:
        raise ClassSyntaxError(f"unknown class {base!r}") from None


__all__ = [
    "GroupClass", "FormationSigmaFunction", "ResidualError", "builtin", "class_product",
    "gaschuetz_product", "residual", "intersection", "constant", "lf_sigma_member",
    "lf_class", "lemma23_equivalence_check", "is_saturated_on", "is_formation_on",
    "is_hereditary_on", "parse_class", "blockset", "EMPTY",
]
