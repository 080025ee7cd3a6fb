import itertools

import pytest
from hypothesis import given, settings, strategies as st

from sigmalocal.perm import (DegreeError, EnumerationBoundError, Permutation, PermGroup,
                             closure_elements, format_cycles, parse_cycles)


def perms(degree):
    return st.permutations(list(range(degree))).map(Permutation)


@st.composite
def small_groups(draw, max_degree=7, max_gens=3):
    d = draw(st.integers(1, max_degree))
    gens = draw(st.lists(perms(d), min_size=0, max_size=max_gens))
    return PermGroup(gens, degree=d)


def test_compose_applies_right_factor_first():
    p = parse_cycles("(1 2)", 3)
    q = parse_cycles("(2 3)", 3)
    # q first: 1 -> 1 -> 2
    assert (p * q)(0) == 1
    assert (p * q) != (q * p)


def test_cycle_notation_round_trip():
    p = parse_cycles("(1 3 2)(4 5)", 6)
    assert format_cycles(p) == "(1 3 2)(4 5)"
    assert format_cycles(Permutation.identity(4)) == "()"
    assert parse_cycles("()", 3).is_identity()


@pytest.mark.parametrize("text", ["(1 2", "1 2)", "(1 2)x", "(a b)", "(1 1)", ""])
def test_malformed_cycles_rejected(text):
    with pytest.raises(ValueError):
        parse_cycles(text, 4)


def test_point_outside_degree():
    with pytest.raises(DegreeError):
        parse_cycles("(1 5)", 4)


def test_generator_degree_mismatch():
    with pytest.raises(DegreeError):
        PermGroup([Permutation.identity(3), Permutation.identity(4)])


@given(perms(6), perms(6), perms(6))
def test_composition_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(perms(7), st.integers(-10, 10))
def test_power_and_inverse(p, k):
    assert p * p.inverse() == Permutation.identity(7)
    assert (p ** k) * (p ** -k) == Permutation.identity(7)
    assert (p ** p.order()).is_identity()


@given(perms(7))
def test_format_parse_round_trip(p):
    assert parse_cycles(format_cycles(p), 7) == p


@settings(max_examples=60, deadline=None)
@given(small_groups())
def test_chain_order_matches_closure(G):
    closure = closure_elements(G.generators, G.degree)
    assert G.order() == len(closure)
    listed = {g.images for g in G.elements()}
    assert listed == closure


@settings(max_examples=60, deadline=None)
@given(small_groups(max_degree=6), perms(6))
def test_membership_matches_closure(G, p):
    if G.degree != 6:
        return
    closure = closure_elements(G.generators, 6)
    assert G.contains(p) == (p.images in closure)


def test_symmetric_group_orders():
    for n in range(1, 8):
        gens = [Permutation(list(range(1, n)) + [0])] if n > 1 else []
        if n > 2:
            gens.append(parse_cycles("(1 2)", n))
        G = PermGroup(gens, degree=n)
        assert G.order() == len(list(itertools.permutations(range(n))))


def test_enumeration_bound():
    G = PermGroup([parse_cycles("(1 2 3 4 5 6 7 8)", 8), parse_cycles("(1 2)", 8)])
    with pytest.raises(EnumerationBoundError):
        list(G.elements(bound=100))
    with pytest.raises(EnumerationBoundError):
        closure_elements(G.generators, 8, bound=100)
