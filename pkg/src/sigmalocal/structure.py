"""Subgroup lattice, quotients and the classical structural predicates.

Every function accepts either a :class:`PermGroup` or a :class:`Section`.
With a ``PermGroup`` argument subgroups go in and come out as ``PermGroup``
objects; with a ``Section`` they are lattice ids (standing for ``K/bottom``)
and subgroup-valued results are returned as ids too.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .lattice import (LATTICE_BOUND, QUOTIENT_DEGREE_BOUND, LatticeBoundError, Section,
                      coset_action, lattice)
from .perm import PermGroup
from .sigma import factorize, is_prime, pi_of

GroupLike = Union[PermGroup, Section]


class NotNormalError(ValueError):
    pass


def as_section(G: GroupLike, bound: int = LATTICE_BOUND) -> Section:
    if isinstance(G, Section):
        return G
    return lattice(G, bound).section()


def subgroup_id(G: GroupLike, H) -> int:
    """Lattice id of ``H`` (a ``PermGroup`` subgroup of ``G``, or already an id)."""
    if isinstance(G, Section):
        return int(H)
    return lattice(G).id_of_group(H)


def _out(G: GroupLike, k: int):
    if isinstance(G, Section):
        return k
    return lattice(G).subgroup(k)


@dataclass(frozen=True)
class SubgroupRecord:
    subgroup: PermGroup
    index: int
    is_normal: bool
    lattice_id: int

    @property
    def order(self) -> int:
        return self.subgroup.order()


def all_subgroups(G: PermGroup, bound: int = LATTICE_BOUND) -> list[SubgroupRecord]:
    """One record per subgroup, ascending by order."""
    lat = lattice(G, bound)
    n = G.order()
    return [SubgroupRecord(lat.subgroup(k), n // int(lat.orders[k]),
                           bool(lat.normal_in[k, lat.whole]), k)
            for k in range(lat.m)]


def _records(G: PermGroup, ids) -> list[SubgroupRecord]:
    lat = lattice(G)
    n = G.order()
    return [SubgroupRecord(lat.subgroup(int(k)), n // int(lat.orders[k]),
                           bool(lat.normal_in[k, lat.whole]), int(k)) for k in ids]


def normal_subgroups(G: GroupLike):
    S = as_section(G)
    ids = [int(k) for k in S.normal_subgroups()]
    return ids if isinstance(G, Section) else _records(G, ids)


def minimal_normal_subgroups(G: GroupLike):
    S = as_section(G)
    ids = S.minimal_normal_subgroups()
    return ids if isinstance(G, Section) else _records(G, ids)


def quotient(G: GroupLike, N, degree_bound: int = QUOTIENT_DEGREE_BOUND):
    """``G/N``: a new section, or for a ``PermGroup`` the action on the cosets of ``N``."""
    S = as_section(G)
    k = subgroup_id(G, N)
    if not S.is_normal(k):
        raise NotNormalError("quotient by a subgroup that is not normal")
    if isinstance(G, Section):
        return S.quotient(k)
    if S.rel_order(S.top) // S.rel_order(k) > degree_bound:
        raise LatticeBoundError("quotient degree bound exceeded")
    return coset_action(S.lat, S.top, k, degree_bound)


def chief_series(G: GroupLike) -> list:
    S = as_section(G)
    return [_out(G, k) for k in S.chief_series()]


def chief_factor_orders(G: GroupLike) -> list[int]:
    return as_section(G).chief_factor_orders()


def derived_subgroup(G: GroupLike):
    S = as_section(G)
    return _out(G, S.commutator_subgroup())


def center(G: GroupLike):
    return _out(G, as_section(G).center())


def centralizer(G: GroupLike, H):
    S = as_section(G)
    return _out(G, S.centralizer(subgroup_id(G, H)))


def frattini(G: GroupLike):
    return _out(G, as_section(G).frattini())


def normal_closure(G: GroupLike, H):
    S = as_section(G)
    return _out(G, S.normal_closure(subgroup_id(G, H)))


def is_subnormal(E, G: GroupLike) -> bool:
    """Descend ``G = H_0 > H_1 > ...`` with ``H_{i+1}`` the normal closure of E in H_i."""
    S = as_section(G)
    e = subgroup_id(G, E)
    cur = S.top
    while True:
        nxt = Section(S.lat, cur, S.bottom).normal_closure(e)
        if nxt == cur:
            return cur == e
        cur = nxt


def p_part(n: int, p: int) -> int:
    d = 1
    while n % p == 0:
        n //= p
        d *= p
    return d


def sylow_subgroup(G: GroupLike, p: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    S = as_section(G)
    target = p_part(S.order, p)
    for k in S.subgroups():
        if S.rel_order(k) == target:
            return _out(G, int(k))
    raise AssertionError("Sylow subgroup missing from the lattice")


def O_pi(G: GroupLike, primes) -> object:
    """Product of all normal subgroups whose order involves only ``primes``."""
    S = as_section(G)
    primes = frozenset(primes)
    good = [int(k) for k in S.normal_subgroups() if pi_of(S.rel_order(k)) <= primes]
    return _out(G, S.join(good))


def is_abelian(G: GroupLike) -> bool:
    return as_section(G).is_abelian()


def _has_normal_of_order(S: Section, target: int) -> bool:
    o = S.lat.orders
    b = int(o[S.bottom])
    return bool(((o[S.normal_subgroups()] // b) == target).any())


def is_nilpotent(G: GroupLike) -> bool:
    """Every Sylow subgroup normal."""
    S = as_section(G)

    def compute():
        n = S.order
        return all(_has_normal_of_order(S, p ** e) for p, e in factorize(n))
    return S.memo("nilpotent", compute)


def is_soluble(G: GroupLike) -> bool:
    """Derived series reaches the identity."""
    S = as_section(G)
    return S.memo("soluble", lambda: S.derived_series()[-1] == S.bottom)


def is_supersoluble(G: GroupLike) -> bool:
    """Every chief factor of prime order."""
    S = as_section(G)
    return all(is_prime(f) for f in S.chief_factor_orders())


def is_metanilpotent(G: GroupLike) -> bool:
    """Some normal nilpotent ``N`` with ``G/N`` nilpotent."""
    S = as_section(G)

    def compute():
        for k in S.normal_subgroups():
            k = int(k)
            if is_nilpotent(S.sub(k)) and is_nilpotent(S.quotient(k)):
                return True
        return False
    return S.memo("metanilpotent", compute)


def fitting_subgroup(G: GroupLike):
    S = as_section(G)
    good = [int(k) for k in S.normal_subgroups() if is_nilpotent(S.sub(int(k)))]
    return _out(G, S.join(good))


def element_order_multiset(G: PermGroup) -> tuple[tuple[int, int], ...]:
    from collections import Counter

    c = Counter(g.order() for g in G.elements())
    return tuple(sorted(c.items()))
