"""Invariance and closure properties over randomly chosen corpus groups."""

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from sigmalocal import closure as cl
from sigmalocal import formations as fm
from sigmalocal import identities as idn
from sigmalocal.builders import regular_representation
from sigmalocal.corpus import builtin_corpus
from sigmalocal.sigma import parse_sigma
from sigmalocal.structure import all_subgroups, as_section, chief_factor_orders

SMALL = builtin_corpus("small").groups()
PARTS = [parse_sigma(t) for t in ("sigma1", "pi:2,3", "blocks:[2,3]|rest", "pi:3")]
CLASSES = [fm.builtin(n) for n in ("A", "N", "U", "N2", "Nsigma", "Nsigma2", "Ssigma")]

slow = settings(max_examples=25, deadline=None,
                suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])


@slow
@given(st.sampled_from(SMALL), st.sampled_from(PARTS))
def test_isomorphism_invariance(entry, sigma):
    gid, G = entry
    R = regular_representation(G)
    assert len(all_subgroups(R)) == len(all_subgroups(G))
    assert sorted(chief_factor_orders(R)) == sorted(chief_factor_orders(G))
    for F in CLASSES:
        assert F.member(R, sigma) == F.member(G, sigma), (gid, F.name)
    for t in (2, 3):
        a = cl.find_witness_tuple(G, fm.builtin("A"), t, sigma)
        b = cl.find_witness_tuple(R, fm.builtin("A"), t, sigma)
        assert (a is None) == (b is None)
        if a is not None:
            assert sorted(r.index for r in a) == sorted(r.index for r in b)


@slow
@given(st.sampled_from(SMALL), st.sampled_from(PARTS), st.sampled_from(CLASSES),
       st.sampled_from(CLASSES))
def test_intersection_membership(entry, sigma, F1, F2):
    _, G = entry
    both = F1 & F2
    assert both.member(G, sigma) == (F1.member(G, sigma) and F2.member(G, sigma))


@pytest.mark.parametrize("sigma", PARTS, ids=str)
def test_intersection_closure_sweep(sigma):
    corpus = builtin_corpus("small")
    for F1, F2 in [(fm.builtin("A"), fm.builtin("Nsigma")), (fm.builtin("U"), fm.builtin("N"))]:
        for t in (2, 3):
            rep = idn.check_intersection_closure(corpus, sigma, t, F1, F2)
            assert rep.ok, rep.violations


@slow
@given(st.sampled_from(SMALL), st.sampled_from(PARTS))
def test_witness_members_meet_definition(entry, sigma):
    _, G = entry
    F = fm.builtin("N")
    for t in (1, 2, 3):
        w = cl.find_witness_tuple(G, F, t, sigma)
        if w is None:
            continue
        if not F.member(G, sigma):
            cl.validate_counterexample(G, [r.subgroup for r in w], F, sigma, t)


@slow
@given(st.sampled_from(SMALL), st.sampled_from(PARTS))
def test_section_quotient_orders(entry, sigma):
    _, G = entry
    S = as_section(G)
    for k in S.normal_subgroups():
        Q = S.quotient(int(k))
        assert Q.order * S.rel_order(int(k)) == S.order
