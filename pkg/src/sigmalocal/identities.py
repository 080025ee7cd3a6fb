"""Group-level identities between classes, subgroups and products, swept over a corpus.

Each check returns a :class:`PropertyReport` listing the groups (or group and
subgroup pairs) where the two sides disagree; all are expected to be empty.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import formations as fm
from . import sigma_classes as sc
from .closure import check_sigma_t_closed
from .formations import GroupClass, PropertyReport, _groups
from .sigma import Block, BlockSet, SigmaPartition, format_sigma, sigma_of
from .structure import as_section, is_subnormal


def _report(prop: str, name: str, sigma: SigmaPartition) -> PropertyReport:
    return PropertyReport(prop, name, format_sigma(sigma))


def check_product_agreement(corpus, sigma: SigmaPartition,
                            pairs: Sequence[tuple[GroupClass, GroupClass]]) -> PropertyReport:
    """``M H`` and ``M o H`` agree for hereditary ``M``."""
    rep = _report("class product = Gaschuetz product",
                  "; ".join(f"{M.name},{H.name}" for M, H in pairs), sigma)
    for gid, G in _groups(corpus):
        S = as_section(G)
        rep.groups_checked += 1
        for M, H in pairs:
            if fm.class_product(M, H).member(S, sigma) != fm.gaschuetz_product(M, H).member(S, sigma):
                rep.violations.append(f"{gid}: {M.name}, {H.name}")
    return rep


def check_gaschuetz_associativity(corpus, sigma: SigmaPartition,
                                  triples: Sequence[tuple[GroupClass, GroupClass, GroupClass]]
                                  ) -> PropertyReport:
    """``(M o H) o F`` and ``M o (H o F)`` agree."""
    rep = _report("Gaschuetz product associative",
                  "; ".join(f"{a.name},{b.name},{c.name}" for a, b, c in triples), sigma)
    gp = fm.gaschuetz_product
    for gid, G in _groups(corpus):
        S = as_section(G)
        rep.groups_checked += 1
        for M, H, F in triples:
            if gp(gp(M, H), F).member(S, sigma) != gp(M, gp(H, F)).member(S, sigma):
                rep.violations.append(f"{gid}: {M.name}, {H.name}, {F.name}")
    return rep


def check_normal_product_closure(corpus, sigma: SigmaPartition,
                                 Pis: Iterable[BlockSet]) -> PropertyReport:
    """Normal ``A, B`` in the sigma-soluble ``Pi``-closed class with ``AB = G``
    force ``G`` into the class."""
    Pis = list(Pis)
    rep = _report("normal product closure", "sigma-soluble Pi-closed", sigma)
    for gid, G in _groups(corpus):
        S = as_section(G)
        rep.groups_checked += 1
        normals = [int(k) for k in S.normal_subgroups()]
        for P in Pis:
            cls = fm.builtin("sigma_soluble_pi_closed", Pi=P)
            good = [k for k in normals if cls.member(S.sub(k), sigma)]
            if cls.member(S, sigma):
                continue
            for i, a in enumerate(good):
                if any(S.join([a, b]) == S.top for b in good[i:]):
                    rep.violations.append(f"{gid}: Pi={P}")
                    break
    return rep


def check_F_Pi_subnormal_meet(corpus, sigma: SigmaPartition,
                              Pis: Iterable[BlockSet]) -> PropertyReport:
    """``F_Pi(G) cap E = F_Pi(E)`` for every subnormal ``E``."""
    Pis = list(Pis)
    rep = _report("F_Pi(G) meet E = F_Pi(E) for subnormal E", "F_Pi", sigma)
    pairs = 0
    for gid, G in _groups(corpus):
        S = as_section(G)
        rep.groups_checked += 1
        sub = [int(e) for e in S.subgroups() if is_subnormal(int(e), S)]
        for P in Pis:
            f = sc._F_Pi_id(S, P, sigma)
            for e in sub:
                pairs += 1
                if S.meet([f, e]) != sc._F_Pi_id(S.sub(e), P, sigma):
                    rep.violations.append(f"{gid}: Pi={P}, E of order {S.rel_order(e)}")
    rep.pairs_checked = pairs
    return rep


def check_lf_triple_product(corpus, sigma: SigmaPartition,
                            functions: Sequence[fm.FormationSigmaFunction]) -> PropertyReport:
    """``G in LF(f)`` iff ``G in (G_{b'} G_b) f(b)`` for every block ``b`` of ``sigma(G)``."""
    rep = _report("LF(f) = per-block triple products", "; ".join(map(str, functions)), sigma)
    for gid, G in _groups(corpus):
        rep.groups_checked += 1
        for f in functions:
            if not fm.lemma23_equivalence_check(G, f, sigma):
                rep.violations.append(f"{gid}: {f}")
    return rep


def check_fitting_centralizer(corpus, sigma: SigmaPartition) -> PropertyReport:
    """``C_G(F_sigma(G)) <= F_sigma(G)`` for sigma-soluble ``G``."""
    rep = _report("centralizer of F_sigma inside F_sigma", "sigma-soluble", sigma)
    for gid, G in _groups(corpus):
        S = as_section(G)
        if not sc.is_sigma_soluble(S, sigma):
            continue
        rep.groups_checked += 1
        f = sc._F_sigma_id(S, sigma)
        if not S.lat.sub[S.centralizer(f), f]:
            rep.violations.append(gid)
    return rep


def check_intersection_closure(corpus, sigma: SigmaPartition, t: int,
                               F1: GroupClass, F2: GroupClass, timeout=None) -> PropertyReport:
    """If ``F1`` and ``F2`` show no counterexample at level ``t`` then neither
    does ``F1 & F2``; the intersection is swept directly."""
    both = fm.intersection(F1, F2)
    rep = _report("intersection closure", both.name, sigma)
    r1 = check_sigma_t_closed(F1, sigma, t, corpus, timeout)
    r2 = check_sigma_t_closed(F2, sigma, t, corpus, timeout)
    r12 = check_sigma_t_closed(both, sigma, t, corpus, timeout)
    rep.groups_checked = r12.groups_checked
    if not r1.counterexamples and not r2.counterexamples:
        rep.violations += [c["group"] for c in r12.counterexamples]
    rep.searched = r12.searched
    return rep


def check_lf_sigma_nilpotent(corpus, sigma: SigmaPartition) -> PropertyReport:
    """``LF(f = I)`` is the class of sigma-nilpotent groups."""
    rep = _report("LF(f = I) = sigma-nilpotent", "Nsigma", sigma)
    f = fm.constant(fm.builtin("I"))
    for gid, G in _groups(corpus):
        rep.groups_checked += 1
        if fm.lf_sigma_member(G, f, sigma) != sc.is_sigma_nilpotent(G, sigma):
            rep.violations.append(gid)
    return rep


def check_lf_meta_sigma_nilpotent(corpus, sigma: SigmaPartition) -> PropertyReport:
    """``LF(f = Nsigma)`` agrees with the direct sweep for meta-sigma-nilpotency."""
    rep = _report("LF(f = Nsigma) = meta-sigma-nilpotent", "Nsigma2", sigma)
    f = fm.constant(fm.builtin("Nsigma"))
    for gid, G in _groups(corpus):
        rep.groups_checked += 1
        if fm.lf_sigma_member(G, f, sigma) != sc.is_meta_sigma_nilpotent(G, sigma):
            rep.violations.append(gid)
    return rep


def check_F_block_equals_O(corpus, sigma: SigmaPartition) -> PropertyReport:
    """``F_{b}(G) = O_{b',b}(G)`` for every block ``b`` meeting ``|G|``."""
    rep = _report("F_b(G) = O_{b',b}(G)", "all blocks", sigma)
    for gid, G in _groups(corpus):
        S = as_section(G)
        rep.groups_checked += 1
        for b in _blocks_to_check(S.order, sigma):
            P = BlockSet(frozenset([b]))
            if sc._F_Pi_id(S, P, sigma) != sc._O_prime_block_id(S, b, sigma):
                rep.violations.append(f"{gid}: {b}")
    return rep


def _blocks_to_check(n: int, sigma: SigmaPartition) -> list[Block]:
    blocks = set(sigma_of(n, sigma))
    # a block missing from |G| is checked too: both sides are then G
    blocks |= set(sigma.blocks())
    return sorted(blocks, key=Block.sort_key)
