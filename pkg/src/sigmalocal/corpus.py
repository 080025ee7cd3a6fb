"""Group corpora: the line-oriented group file format and the builder-generated corpus.

File format, one record per block, records separated by a blank line::

    id S3
    degree 3
    gen (1 2)
    gen (1 2 3)
    tag order=6

Every record must carry ``id`` and ``degree``; ``gen`` and ``tag`` lines may
repeat.  Lines starting with ``#`` are comments and are dropped on load.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable

from . import builders as b
from .lattice import lattice
from .perm import DegreeError, PermGroup, format_cycles, parse_cycles
from .sigma import factorize, is_prime
from .structure import element_order_multiset

DEFAULT_MAX_ORDER = 120
EXTENDED_MAX_ORDER = 384
PRODUCT_MAX_ORDER = 120

DEFAULT_FAMILIES = ("cyclic", "dihedral", "symmetric", "alternating", "elementary_abelian",
                    "extra", "wreath", "direct_products")


class GroupFileError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CorpusError(ValueError):
    pass


@dataclass
class GroupFileRecord:
    id: str
    degree: int
    generators: list[str] = field(default_factory=list)
    tags: list[str] = field(default_factory=list)

    def group(self) -> PermGroup:
        gens = [parse_cycles(g, self.degree) for g in self.generators]
        return PermGroup(gens, degree=self.degree, name=self.id)

    def tag_value(self, key: str) -> str | None:
        prefix = key + "="
        for t in self.tags:
            if t.startswith(prefix):
                return t[len(prefix):]
        return None

    def lines(self) -> list[str]:
        out = [f"id {self.id}", f"degree {self.degree}"]
        out += [f"gen {g}" for g in self.generators]
        out += [f"tag {t}" for t in self.tags]
        return out


def record_from_group(gid: str, G: PermGroup, tags: Iterable[str] = ()) -> GroupFileRecord:
    gens = [format_cycles(g) for g in G.generators]
    return GroupFileRecord(gid, G.degree, gens, [f"order={G.order()}", *tags])


@dataclass
class Corpus:
    records: list[GroupFileRecord] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)
    _groups: list | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        seen = set()
        for r in self.records:
            if r.id in seen:
                raise CorpusError(f"duplicate id {r.id!r}")
            seen.add(r.id)

    def __len__(self) -> int:
        return len(self.records)

    def groups(self) -> list[tuple[str, PermGroup]]:
        """``(id, group)`` pairs; groups are built once and reused, so cached
        lattices are shared between suites run over the same corpus."""
        if self._groups is None:
            out = []
            for r in self.records:
                G = r.group()
                claimed = r.tag_value("order")
                if claimed is not None and int(claimed) != G.order():
                    raise CorpusError(f"record {r.id!r} tagged order={claimed} "
                                      f"but generates a group of order {G.order()}")
                out.append((r.id, G))
            self._groups = out
        return self._groups

    def record(self, gid: str) -> GroupFileRecord:
        for r in self.records:
            if r.id == gid:
                return r
        raise KeyError(gid)


def parse_group_text(text: str) -> Corpus:
    records: list[GroupFileRecord] = []
    cur: dict | None = None
    ids: set[str] = set()

    def finish(lineno):
        nonlocal cur
        if cur is None:
            return
        if "degree" not in cur:
            raise GroupFileError(cur["line"], f"record {cur['id']!r} has no degree line")
        records.append(GroupFileRecord(cur["id"], cur["degree"], cur["gens"], cur["tags"]))
        cur = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            finish(lineno)
            continue
        if line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "id":
            finish(lineno)
            if not rest or len(rest.split()) != 1:
                raise GroupFileError(lineno, "id needs a single name")
            if rest in ids:
                raise GroupFileError(lineno, f"duplicate id {rest!r}")
            ids.add(rest)
            cur = {"id": rest, "gens": [], "tags": [], "line": lineno}
            continue
        if cur is None:
            raise GroupFileError(lineno, f"{key!r} line outside a record")
        if key == "degree":
            if "degree" in cur:
                raise GroupFileError(lineno, "second degree line")
            try:
                d = int(rest)
            except ValueError:
                raise GroupFileError(lineno, f"bad degree {rest!r}") from None
            if d < 1:
                raise GroupFileError(lineno, "degree must be positive")
            cur["degree"] = d
        elif key == "gen":
            if "degree" not in cur:
                raise GroupFileError(lineno, "gen before degree")
            try:
                parse_cycles(rest, cur["degree"])
            except DegreeError as e:
                raise GroupFileError(lineno, f"degree violation: {e}") from None
            except ValueError as e:
                raise GroupFileError(lineno, str(e)) from None
            cur["gens"].append(rest)
        elif key == "tag":
            if not rest:
                raise GroupFileError(lineno, "empty tag")
            cur["tags"].append(rest)
        else:
            raise GroupFileError(lineno, f"unknown keyword {key!r}")
    finish(None)
    return Corpus(records)


def load_group_file(path: str | os.PathLike) -> Corpus:
    with open(path, encoding="utf-8") as fh:
        corpus = parse_group_text(fh.read())
    corpus.provenance = {"loaded_from": os.fspath(path)}
    return corpus


def format_group_text(records: Iterable[GroupFileRecord]) -> str:
    blocks = ["\n".join(r.lines()) for r in records]
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def save_group_file(path: str | os.PathLike, records) -> None:
    if isinstance(records, Corpus):
        records = records.records
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_group_text(records))


# corpus generation

def _generators_commute(G: PermGroup) -> bool:
    gens = G.generators
    return all(x * y == y * x for i, x in enumerate(gens) for y in gens[i + 1:])


def fingerprint(G: PermGroup) -> tuple:
    """``(order, abelian?, element-order multiset)``."""
    return (G.order(), _generators_commute(G), element_order_multiset(G))


ELEMENTARY_SUBGROUP_CAP = 5000


def subspace_count(p: int, k: int) -> int:
    """Number of subgroups of ``C_p^k`` (sum of Gaussian binomials)."""
    total = 0
    for j in range(k + 1):
        num = den = 1
        for i in range(j):
            num *= p ** (k - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total


def _primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def _family(name: str, max_order: int) -> list[tuple[str, PermGroup]]:
    out: list[tuple[str, PermGroup]] = []
    if name == "cyclic":
        out = [(f"C{n}", b.cyclic(n)) for n in range(1, max_order + 1)]
    elif name == "dihedral":
        out = [(f"D{2 * n}", b.dihedral(n)) for n in range(2, max_order // 2 + 1)]
    elif name == "symmetric":
        out = [(f"S{n}", b.symmetric(n)) for n in range(3, 6)]
    elif name == "alternating":
        out = [(f"A{n}", b.alternating(n)) for n in range(4, 6)]
    elif name == "elementary_abelian":
        for p in _primes_upto(max_order):
            k = 2
            while p ** k <= max_order and subspace_count(p, k) <= ELEMENTARY_SUBGROUP_CAP:
                out.append((f"{p}^{k}", b.elementary_abelian(p, k)))
                k += 1
    elif name == "extra":
        out.append(("Q8", b.quaternion(8)))
        out += [(f"Dic{4 * m}", b.quaternion(4 * m)) for m in range(3, max_order // 4 + 1)]
        for p in _primes_upto(max_order):
            for d in range(2, p):
                if (p - 1) % d == 0 and p * d <= max_order:
                    out.append((f"F{p}:{d}", b.affine(p, d)))
        out += [("SL(2,3)", b.sl2_3()), ("AGL(1,8)", b.agl1_8())]
    elif name == "wreath":
        small = [("C2", b.cyclic(2)), ("C3", b.cyclic(3)), ("C5", b.cyclic(5))]
        tops = small + [("C4", b.cyclic(4)), ("V4", b.dihedral(2)), ("S3", b.symmetric(3))]
        for an, A in small:
            for gn, T in tops:
                if A.order() ** T.order() * T.order() <= max_order:
                    out.append((f"{an}wr{gn}", b.regular_wreath(A, T).group))
    elif name == "stress":
        # groups with four prime divisors, where t=4 witnesses can involve
        # four distinct proper subgroups
        c35 = b.cyclic(35)
        out = [("A4xC35", b.direct_product(b.alternating(4), c35)),
               ("S4xC35", b.direct_product(b.symmetric(4), c35)),
               ("C2wrC3xC35", b.direct_product(b.regular_wreath(b.cyclic(2), b.cyclic(3)).group, c35)),
               ("S3xD10xC7", b.direct_product(b.symmetric(3), b.dihedral(5), b.cyclic(7))),
               ("A5xC7", b.direct_product(b.alternating(5), b.cyclic(7))),
               ("A5xC11", b.direct_product(b.alternating(5), b.cyclic(11)))]
    else:
        raise CorpusError(f"unknown family {name!r}")
    return [(gid, G) for gid, G in out if G.order() <= max_order or name == "stress"]


class _Dedup:
    def __init__(self):
        self.kept: list[tuple[str, PermGroup, str]] = []
        self.by_fp: dict[tuple, list[PermGroup]] = {}
        self.ids: set[str] = set()

    def add(self, gid: str, G: PermGroup, family: str) -> bool:
        fp = fingerprint(G)
        same = self.by_fp.get(fp, [])
        if same:
            # abelian groups are determined by their element-order counts
            if fp[1]:
                return False
            # otherwise keep only if the subgroup counts differ
            m = lattice(G).m
            if any(lattice(H).m == m for H in same):
                return False
        base, k = gid, 2
        while gid in self.ids:
            gid = f"{base}_{k}"
            k += 1
        self.ids.add(gid)
        G.name = gid
        self.by_fp.setdefault(fp, []).append(G)
        self.kept.append((gid, G, family))
        return True


def build_corpus(max_order: int = DEFAULT_MAX_ORDER, families: Iterable[str] | None = None,
                 ingests: Iterable[str | os.PathLike] = (),
                 product_max_order: int = PRODUCT_MAX_ORDER,
                 family_max_order: dict[str, int] | None = None) -> Corpus:
    """Deterministic builder-generated corpus, deduplicated by fingerprint.

    Direct products of two kept groups are added until nothing new appears,
    as long as the product order is at most ``min(max_order, product_max_order)``.
    ``family_max_order`` lowers the order bound for individual families.
    """
    limits = family_max_order or {}
    fams = list(DEFAULT_FAMILIES if families is None else families)
    d = _Dedup()
    d.add("C1", b.trivial(), "cyclic")
    for fam in fams:
        if fam == "direct_products":
            continue
        for gid, G in _family(fam, min(max_order, limits.get(fam, max_order))):
            if G.order() > 1:
                d.add(gid, G, fam)
    if "direct_products" in fams:
        bound = min(max_order, product_max_order)
        frontier_start = 0
        while True:
            current = [(gid, G) for gid, G, _ in d.kept if 1 < G.order() <= bound]
            new = False
            for j, (bn, B) in enumerate(current):
                if j < frontier_start:
                    continue
                for an, A in current[:j + 1]:
                    if A.order() * B.order() > bound:
                        continue
                    if d.add(f"{an}x{bn}", b.direct_product(A, B), "direct_products"):
                        new = True
            if not new:
                break
            frontier_start = len(current)
    records = []
    for gid, G, fam in sorted(d.kept, key=lambda x: (x[1].order(), _fam_rank(x[2]), x[0])):
        records.append(record_from_group(gid, G, [f"family={fam}"]))
    ingested = []
    for path in ingests:
        extra = load_group_file(path)
        for r in extra.records:
            if "ingested" not in r.tags:
                r.tags.append("ingested")
            if any(x.id == r.id for x in records):
                raise CorpusError(f"ingested id {r.id!r} already in the corpus")
            records.append(r)
        ingested.append(os.fspath(path))
    provenance = {"max_order": max_order, "families": fams,
                  "family_max_order": dict(sorted(limits.items())),
                  "product_max_order": min(max_order, product_max_order),
                  "ingested": ingested}
    return Corpus(records, provenance)


def _fam_rank(fam: str) -> int:
    order = list(DEFAULT_FAMILIES) + ["stress"]
    return order.index(fam) if fam in order else len(order)


_BUILTIN: dict = {}


def builtin_corpus(name: str = "default") -> Corpus:
    """``default`` (order <= 120), ``small`` (order <= 24) or ``extended``:
    the default corpus plus the non-cyclic, non-dihedral families up to order
    384 and a few groups of order 420 to 840 with four prime divisors."""
    if name not in _BUILTIN:
        if name == "default":
            _BUILTIN[name] = build_corpus(DEFAULT_MAX_ORDER)
        elif name == "extended":
            _BUILTIN[name] = build_corpus(
                EXTENDED_MAX_ORDER, list(DEFAULT_FAMILIES) + ["stress"],
                family_max_order={"cyclic": DEFAULT_MAX_ORDER, "dihedral": DEFAULT_MAX_ORDER})
        elif name == "small":
            _BUILTIN[name] = build_corpus(24)
        else:
            raise CorpusError(f"unknown builtin corpus {name!r}")
    return _BUILTIN[name]


def order_profile(corpus: Corpus) -> dict[int, int]:
    out: dict[int, int] = {}
    for _, G in corpus.groups():
        out[G.order()] = out.get(G.order(), 0) + 1
    return dict(sorted(out.items()))


def prime_support_sizes(corpus: Corpus) -> dict[int, int]:
    out: dict[int, int] = {}
    for _, G in corpus.groups():
        k = len(factorize(G.order())) if G.order() > 1 else 0
        out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items()))
