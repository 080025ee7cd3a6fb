import pytest
from hypothesis import given, settings, strategies as st

from sigmalocal.builders import (GroupNameError, alternating, cyclic, dihedral, direct_product,
                                 elementary_abelian, from_name, quaternion, regular_representation,
                                 regular_wreath, symmetric, trivial)
from sigmalocal.structure import all_subgroups, element_order_multiset, is_abelian, is_nilpotent


def test_standard_orders():
    assert cyclic(1).order() == 1
    assert symmetric(4).order() == 24
    assert alternating(5).order() == 60
    assert dihedral(6).order() == 12
    assert quaternion(8).order() == 8
    E = elementary_abelian(2, 3)
    assert E.order() == 8
    assert all(g.order() <= 2 for g in E.elements())


@given(st.integers(1, 30))
def test_cyclic_and_dihedral_orders(n):
    assert cyclic(n).order() == n
    assert dihedral(n).order() == 2 * n


def test_direct_product_degrees_and_orders():
    G = direct_product(cyclic(2), cyclic(3))
    assert G.degree == 5 and G.order() == 6
    assert is_abelian(G)
    H = direct_product(symmetric(3), trivial())
    assert H.order() == 6
    assert len(all_subgroups(H)) == len(all_subgroups(symmetric(3)))
    assert is_nilpotent(direct_product(cyclic(2), cyclic(2), cyclic(3)))


def test_wreath_c2_c3():
    W = regular_wreath(cyclic(2), cyclic(3))
    assert W.group.order() == 24
    assert W.base.order() == 8
    assert all(W.group.contains(g) for g in W.base.generators)


def test_wreath_c2_c2_is_d8():
    W = regular_wreath(cyclic(2), cyclic(2)).group
    assert W.order() == 8
    assert not is_abelian(W)
    assert max(g.order() for g in W.elements()) == 4
    assert element_order_multiset(W) == element_order_multiset(dihedral(4))


def test_wreath_with_trivial_base():
    W = regular_wreath(trivial(), symmetric(3)).group
    assert W.order() == 6


SMALL = [cyclic(2), cyclic(3), cyclic(4), dihedral(2), symmetric(3)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL[:4]))
def test_wreath_order_law(A, G):
    W = regular_wreath(A, G)
    a, g = A.order(), G.order()
    assert W.group.order() == a ** g * g
    assert W.base.order() == a ** g


@pytest.mark.parametrize("name,order", [
    ("S4", 24), ("C2wrC3", 24), ("C2wrC3xC35", 840), ("D8", 8), ("Q8xC3", 24),
    ("F7:3", 21), ("2^3", 8), ("V4", 4), ("SL(2,3)", 24), ("AGL(1,8)", 56), ("1", 1),
    ("C2wrC2wrC2", 2048), ("Dic12", 12),
])
def test_from_name(name, order):
    G = from_name(name)
    assert G.order() == order
    assert G.name == name


@pytest.mark.parametrize("bad", ["", "X5", "D7", "C2x", "F7:4"])
def test_from_name_errors(bad):
    with pytest.raises(GroupNameError):
        from_name(bad)


def test_regular_representation_preserves_invariants():
    for G in (symmetric(3), quaternion(8), dihedral(5)):
        R = regular_representation(G)
        assert R.degree == G.order() == R.order()
        assert element_order_multiset(R) == element_order_multiset(G)
