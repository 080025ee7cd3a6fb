"""Sigma-structural predicates and canonical subgroups.

Same calling convention as :mod:`sigmalocal.structure`: a ``PermGroup`` in
gives ``PermGroup`` subgroups out, a ``Section`` in gives lattice ids out.
"""

from __future__ import annotations

from .lattice import Section
from .sigma import Block, BlockSet, SigmaPartition, part_of, pi_of, sigma_of
from .structure import O_pi, GroupLike, _out, as_section


def _sig(S: Section, k: int, sigma: SigmaPartition) -> frozenset[Block]:
    return sigma_of(S.rel_order(k), sigma)


def is_sigma_primary(G: GroupLike, sigma: SigmaPartition) -> bool:
    S = as_section(G)
    return len(sigma_of(S.order, sigma)) <= 1


def is_sigma_soluble(G: GroupLike, sigma: SigmaPartition) -> bool:
    """Every chief factor is sigma-primary."""
    S = as_section(G)
    return all(len(sigma_of(f, sigma)) <= 1 for f in S.chief_factor_orders())


def _normal_of_order(S: Section, target: int) -> int | None:
    o = S.lat.orders
    b = int(o[S.bottom])
    for k in S.normal_subgroups():
        if int(o[k]) // b == target:
            return int(k)
    return None


def is_sigma_nilpotent(G: GroupLike, sigma: SigmaPartition) -> bool:
    """A normal Hall subgroup for every block meeting the order."""
    S = as_section(G)

    def compute():
        n = S.order
        return all(_normal_of_order(S, part_of(n, BlockSet(frozenset([b])), sigma)) is not None
                   for b in sigma_of(n, sigma))
    return S.memo(("sigma_nilpotent", sigma), compute)


def sigma_nilpotent_factors(G: GroupLike, sigma: SigmaPartition) -> list | None:
    """The normal Hall subgroups, one per block of sigma(G), or ``None`` if some is missing."""
    S = as_section(G)
    n = S.order
    out = []
    for b in sorted(sigma_of(n, sigma), key=Block.sort_key):
        k = _normal_of_order(S, part_of(n, BlockSet(frozenset([b])), sigma))
        if k is None:
            return None
        out.append(_out(G, k))
    return out


def is_meta_sigma_nilpotent(G: GroupLike, sigma: SigmaPartition) -> bool:
    """Some normal sigma-nilpotent ``N`` with sigma-nilpotent quotient (exhaustive)."""
    S = as_section(G)

    def compute():
        for k in S.normal_subgroups():
            k = int(k)
            if is_sigma_nilpotent(S.sub(k), sigma) and is_sigma_nilpotent(S.quotient(k), sigma):
                return True
        return False
    return S.memo(("meta_sigma_nilpotent", sigma), compute)


def hall_subgroup(G: GroupLike, Pi: BlockSet, sigma: SigmaPartition):
    """First subgroup (ascending lattice order) of order ``part_of(|G|, Pi)``, else None."""
    S = as_section(G)
    target = part_of(S.order, Pi, sigma)
    o = S.lat.orders
    b = int(o[S.bottom])
    for k in S.subgroups():
        if int(o[k]) // b == target:
            return _out(G, int(k))
    return None


def is_pi_closed(G: GroupLike, Pi: BlockSet, sigma: SigmaPartition) -> bool:
    """A normal Hall ``Pi``-subgroup exists."""
    S = as_section(G)
    return S.memo(("pi_closed", Pi, sigma),
                  lambda: _normal_of_order(S, part_of(S.order, Pi, sigma)) is not None)


def _O_Pi_id(S: Section, Pi: BlockSet, sigma: SigmaPartition) -> int:
    def compute():
        good = [int(k) for k in S.normal_subgroups()
                if all(b in Pi for b in _sig(S, int(k), sigma))]
        return S.join(good)
    return S.memo(("O_Pi", Pi, sigma), compute)


def O_Pi(G: GroupLike, Pi: BlockSet, sigma: SigmaPartition):
    """Largest normal ``Pi``-subgroup, as the product of all normal ``Pi``-subgroups."""
    S = as_section(G)
    return _out(G, _O_Pi_id(S, Pi, sigma))


def _O_prime_block_id(S: Section, block: Block, sigma: SigmaPartition) -> int:
    Pi = BlockSet(frozenset([block]))
    d = _O_Pi_id(S, Pi.prime(), sigma)
    return _O_Pi_id(S.quotient(d), Pi, sigma)


def O_PiPrime_Pi(G: GroupLike, block: Block, sigma: SigmaPartition):
    """Preimage of ``O_b(G / O_b'(G))`` for the block ``b``."""
    S = as_section(G)
    return _out(G, _O_prime_block_id(S, block, sigma))


def _F_Pi_id(S: Section, Pi: BlockSet, sigma: SigmaPartition) -> int:
    def compute():
        good = [int(k) for k in S.normal_subgroups()
                if is_pi_closed(S.sub(int(k)), Pi.prime(), sigma)]
        return S.join(good)
    return S.memo(("F_Pi", Pi, sigma), compute)


def F_Pi(G: GroupLike, Pi: BlockSet, sigma: SigmaPartition):
    """Product of all normal ``Pi'``-closed subgroups."""
    S = as_section(G)
    return _out(G, _F_Pi_id(S, Pi, sigma))


def F_block(G: GroupLike, block: Block, sigma: SigmaPartition):
    return F_Pi(G, BlockSet(frozenset([block])), sigma)


def _F_sigma_id(S: Section, sigma: SigmaPartition) -> int:
    def compute():
        good = [int(k) for k in S.normal_subgroups() if is_sigma_nilpotent(S.sub(int(k)), sigma)]
        return S.join(good)
    return S.memo(("F_sigma", sigma), compute)


def F_sigma(G: GroupLike, sigma: SigmaPartition):
    """Product of all normal sigma-nilpotent subgroups (the sigma-Fitting subgroup)."""
    S = as_section(G)
    return _out(G, _F_sigma_id(S, sigma))


def is_pi_special(G: GroupLike, primes) -> bool:
    """``G = O_p1(G) x ... x O_pn(G) x O_pi'(G)``, checked by orders of the factors."""
    S = as_section(G)
    primes = frozenset(primes)
    o = S.lat.orders
    b = int(o[S.bottom])
    prod = 1
    for p in sorted(primes):
        prod *= int(o[O_pi(S, [p])]) // b
    other = [int(k) for k in S.normal_subgroups()
             if not (pi_of(S.rel_order(int(k))) & primes)]
    prod *= int(o[S.join(other)]) // b
    return prod == S.order

