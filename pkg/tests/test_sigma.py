import math

import pytest
from hypothesis import given, strategies as st

from sigmalocal.sigma import (RESIDUAL, Block, BlockSet, SigmaSyntaxError, are_sigma_coprime,
                              blockset, factorize, format_sigma, from_blocks, is_pi_number,
                              parse_sigma, part_of, pi_of, sigma1, sigma_1pi, sigma_of,
                              single_block)

PRIMES = [2, 3, 5, 7, 11, 13]


@st.composite
def partitions(draw):
    kind = draw(st.sampled_from(["sigma1", "pi", "blocks"]))
    if kind == "sigma1":
        return sigma1()
    ps = draw(st.lists(st.sampled_from(PRIMES), unique=True, max_size=5))
    if kind == "pi":
        return sigma_1pi(ps) if ps else single_block()
    cuts = draw(st.lists(st.integers(1, 3), min_size=len(ps), max_size=len(ps)))
    groups = {}
    for p, c in zip(ps, cuts):
        groups.setdefault(c, []).append(p)
    return from_blocks(groups.values())


def test_parse_examples():
    assert parse_sigma("sigma1").mode == "canonical_sigma1"
    s = parse_sigma("pi:2,3")
    assert s.block_of(2) == Block(frozenset({2}))
    assert s.block_of(5) == RESIDUAL == s.block_of(7)
    b = parse_sigma("blocks:[2,3]|rest")
    assert b.block_of(2) == b.block_of(3) != b.block_of(5)
    assert len(b.blocks()) == 2


@pytest.mark.parametrize("text", ["sigma2", "pi:", "pi:4", "pi:2,x", "blocks:[2,3][3]|rest",
                                  "blocks:[2,4]", "blocks:[]|rest", "nonsense"])
def test_parse_errors(text):
    with pytest.raises(SigmaSyntaxError):
        parse_sigma(text)


def test_sigma_of_examples():
    s1 = sigma1()
    assert len(sigma_of(30, s1)) == 3
    assert sigma_of(1, s1) == frozenset()
    pi = parse_sigma("pi:2,3")
    assert sigma_of(35, pi) == frozenset({RESIDUAL})
    assert are_sigma_coprime(5, 7, s1) and not are_sigma_coprime(5, 7, pi)
    bl = parse_sigma("blocks:[2,3]|rest")
    assert not are_sigma_coprime(4, 9, bl)
    assert are_sigma_coprime(6, 35, bl)


@given(partitions())
def test_format_parse_round_trip(s):
    assert parse_sigma(format_sigma(s)) == s


@given(st.integers(1, 10**6))
def test_factorize(n):
    assert math.prod(p ** e for p, e in factorize(n)) == n
    assert pi_of(n) == frozenset(p for p, _ in factorize(n))


@given(partitions(), st.integers(1, 5000), st.integers(1, 5000))
def test_coprime_symmetric_and_implies_coprime(s, n, m):
    c = are_sigma_coprime(n, m, s)
    assert c == are_sigma_coprime(m, n, s)
    if c:
        assert math.gcd(n, m) == 1
    # the finest partition is ordinary coprimality
    assert are_sigma_coprime(n, m, sigma1()) == (math.gcd(n, m) == 1)


@given(partitions(), st.integers(1, 5000), st.integers(1, 5000))
def test_sigma_of_product_is_union(s, n, m):
    assert sigma_of(n * m, s) == sigma_of(n, s) | sigma_of(m, s)


@given(partitions(), st.integers(1, 10**5))
def test_part_of_splits_n(s, n):
    blocks = list(sigma_of(n, s))
    Pi = BlockSet(frozenset(blocks[:1]))
    a, b = part_of(n, Pi, s), part_of(n, Pi.prime(), s)
    assert a * b == n and math.gcd(a, b) == 1
    assert is_pi_number(a, Pi, s) and is_pi_number(b, Pi.prime(), s)


@given(partitions(), st.sampled_from(PRIMES + [17, 19, 23]))
def test_blocks_partition_the_primes(s, p):
    b = s.block_of(p)
    if s.mode == "canonical_sigma1":
        assert b.primes == frozenset({p})
    else:
        assert b in s.blocks()
        assert (p in b.primes) != b.residual


def test_blockset_complement():
    s = parse_sigma("pi:2,3")
    P = blockset([2])
    assert Block(frozenset({2})) in P
    assert RESIDUAL in P.prime() and Block(frozenset({2})) not in P.prime()
    assert part_of(360, P, s) == 8 and part_of(360, P.prime(), s) == 45
