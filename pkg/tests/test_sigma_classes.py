import pytest

from sigmalocal.builders import cyclic, from_name, symmetric
from sigmalocal.sigma import RESIDUAL, Block, BlockSet, blockset, parse_sigma, sigma1, single_block
from sigmalocal.sigma_classes import (F_Pi, F_block, F_sigma, O_Pi, O_PiPrime_Pi, hall_subgroup,
                                      is_meta_sigma_nilpotent, is_pi_closed, is_pi_special,
                                      is_sigma_nilpotent, is_sigma_primary, is_sigma_soluble,
                                      sigma_nilpotent_factors)
from sigmalocal.structure import (as_section, fitting_subgroup, is_metanilpotent, is_nilpotent,
                                  is_soluble)

S1 = sigma1()
PI23 = parse_sigma("pi:2,3")
B23 = parse_sigma("blocks:[2,3]|rest")
TWO = Block(frozenset({2}))
THREE = Block(frozenset({3}))


def test_s4_under_three_partitions():
    G = symmetric(4)
    assert is_sigma_soluble(G, S1) and not is_sigma_nilpotent(G, S1)
    assert not is_meta_sigma_nilpotent(G, S1)
    assert not is_sigma_nilpotent(G, PI23)
    assert is_sigma_primary(G, B23) and is_sigma_nilpotent(G, B23)
    assert F_sigma(G, S1).order() == 4
    assert F_sigma(G, B23).order() == 24


def test_a5_not_sigma_soluble_under_coarse_block():
    A5 = from_name("A5")
    assert not is_sigma_soluble(A5, S1)
    assert not is_sigma_soluble(A5, B23)
    assert is_sigma_soluble(A5, single_block())
    assert hall_subgroup(A5, BlockSet(frozenset({Block(frozenset({2, 3}))})), B23).order() == 12
    # no subgroup of order 15
    assert hall_subgroup(A5, blockset([3], [5]), S1) is None


def test_hall_and_closed():
    G = symmetric(4)
    assert hall_subgroup(G, blockset([3]), S1).order() == 3
    assert not is_pi_closed(G, blockset([3]), S1)
    assert not is_pi_closed(G, blockset([2]), S1)
    S3C5 = from_name("S3xC5")
    assert is_pi_closed(S3C5, BlockSet(frozenset({RESIDUAL})), PI23)
    assert is_pi_closed(S3C5, blockset([3]), PI23)


def test_O_and_F_subgroups_s4():
    G = symmetric(4)
    assert O_Pi(G, blockset([2]), S1).order() == 4
    assert O_Pi(G, blockset([3]), S1).order() == 1
    assert O_PiPrime_Pi(G, TWO, S1).order() == 4
    # O_3'(S4) = V4 and O_3(S4/V4) = C3, so the preimage is A4
    assert O_PiPrime_Pi(G, THREE, S1).order() == 12
    assert F_block(G, THREE, S1).order() == 12
    assert F_block(G, TWO, S1).order() == 4
    assert F_Pi(G, blockset([2], [3]), S1).order() == 24


def test_sigma_nilpotent_factors():
    G = from_name("S3xC35")
    fs = sigma_nilpotent_factors(G, PI23)
    assert fs is None
    fs = sigma_nilpotent_factors(G, B23)
    assert sorted(f.order() for f in fs) == [6, 35]


def test_pi_special():
    assert is_pi_special(cyclic(6), [2, 3])
    assert not is_pi_special(symmetric(4), [2, 3])
    assert is_pi_special(from_name("S3xC5"), [5])
    assert not is_pi_special(from_name("S3xC5"), [2])


def test_finest_partition_matches_classical(small_corpus):
    for gid, G in small_corpus.groups():
        S = as_section(G)
        assert is_sigma_nilpotent(S, S1) == is_nilpotent(S), gid
        assert is_sigma_soluble(S, S1) == is_soluble(S), gid
        assert is_meta_sigma_nilpotent(S, S1) == is_metanilpotent(S), gid
        assert F_sigma(G, S1).order() == fitting_subgroup(G).order(), gid


@pytest.mark.parametrize("fine,coarse", [(S1, PI23), (PI23, B23), (B23, single_block())])
def test_coarsening_is_monotone(small_corpus, fine, coarse):
    for gid, G in small_corpus.groups():
        S = as_section(G)
        if is_sigma_nilpotent(S, fine):
            assert is_sigma_nilpotent(S, coarse), gid
        if is_sigma_soluble(S, fine):
            assert is_sigma_soluble(S, coarse), gid
        if is_meta_sigma_nilpotent(S, fine):
            assert is_meta_sigma_nilpotent(S, coarse), gid


def test_single_block_makes_everything_sigma_nilpotent(small_corpus):
    one = single_block()
    for gid, G in small_corpus.groups():
        assert is_sigma_primary(G, one) and is_sigma_nilpotent(G, one)
