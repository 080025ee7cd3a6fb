import json

import pytest

from sigmalocal import closure as cl
from sigmalocal import formations as fm
from sigmalocal.builders import cyclic, from_name, symmetric
from sigmalocal.corpus import Corpus, record_from_group
from sigmalocal.perm import PermGroup, parse_cycles
from sigmalocal.sigma import are_sigma_coprime, parse_sigma, sigma1, single_block

S1 = sigma1()
A = fm.builtin("A")
N = fm.builtin("N")


def test_member_gets_trivial_witness():
    w = cl.find_witness_tuple(cyclic(6), A, 3, S1)
    assert [r.index for r in w] == [1, 1, 1]


def test_abelian_not_closed_at_level_two():
    # C3 and C2 in S3 are abelian with coprime indices 2 and 3
    G = symmetric(3)
    w = cl.find_witness_tuple(G, A, 2, S1)
    assert w is not None
    assert sorted(r.index for r in w) == [2, 3]
    cl.validate_counterexample(G, [r.subgroup for r in w], A, S1, 2)
    assert cl.find_witness_tuple(G, A, 3, S1) is None


def test_positive_control_reports_counterexamples(small_corpus):
    rep = cl.check_sigma_t_closed(A, S1, 2, small_corpus)
    assert rep.counterexamples
    assert not rep.ok
    groups = dict(small_corpus.groups())
    assert any(groups[c["group"]].order() == 6 for c in rep.counterexamples)


def test_witness_members_are_valid(small_corpus):
    for gid, G in small_corpus.groups():
        w = cl.find_witness_tuple(G, N, 3, S1)
        if w is None:
            continue
        idx = [r.index for r in w]
        for i in range(3):
            assert N.member(w[i].subgroup, S1)
            for j in range(i + 1, 3):
                assert are_sigma_coprime(idx[i], idx[j], S1)


@pytest.mark.parametrize("F", [A, N, fm.builtin("U")], ids=lambda c: c.name)
def test_monotone_in_t(small_corpus, F):
    # a witness of size t+1 contains one of size t
    for gid, G in small_corpus.groups():
        for t in (1, 2, 3):
            if cl.find_witness_tuple(G, F, t + 1, S1) is not None:
                assert cl.find_witness_tuple(G, F, t, S1) is not None, (gid, t)


def test_single_block_partition_has_no_counterexamples(small_corpus):
    one = single_block()
    for F in (A, N, fm.builtin("I")):
        for t in (2, 3):
            rep = cl.check_sigma_t_closed(F, one, t, small_corpus)
            assert rep.ok and rep.searched == 0


def test_vacuous_levels_are_reported(default_corpus):
    rep = cl.check_sigma_t_closed(N, parse_sigma("blocks:[2,3]|rest"), 3, default_corpus)
    assert rep.searched == 0 and rep.ok


def test_fabricated_claim_is_rejected():
    G = symmetric(4)
    rec = record_from_group("S4", G, ["claim=counterexample",
                                      "witness=(1 2 3 4)", "witness=(1 2 3)", "witness=(1 2)"])
    corpus = Corpus([rec])
    rep = cl.check_sigma_t_closed(A, S1, 3, corpus)
    assert not rep.counterexamples
    assert rep.rejected_claims and rep.rejected_claims[0]["group"] == "S4"
    assert not rep.ok


def test_validate_rejects_bad_witnesses():
    G = symmetric(3)
    c3 = PermGroup([parse_cycles("(1 2 3)", 3)])
    c2 = PermGroup([parse_cycles("(1 2)", 3)])
    with pytest.raises(cl.CounterexampleRejected):
        cl.validate_counterexample(G, [c3, c3], A, S1, 2)
    with pytest.raises(cl.CounterexampleRejected):
        cl.validate_counterexample(G, [c3, c2], A, S1, 3)
    with pytest.raises(cl.CounterexampleRejected):
        cl.validate_counterexample(cyclic(6), [cyclic(6), cyclic(6)], A, S1, 2)
    outside = PermGroup([parse_cycles("(1 2)", 4)])
    with pytest.raises(cl.CounterexampleRejected):
        cl.validate_counterexample(G, [outside, c3], A, S1, 2)


def test_report_json_fields(small_corpus):
    rep = cl.check_sigma_t_closed(N, S1, 3, small_corpus)
    d = json.loads(rep.to_json())
    assert list(d) == ["class_name", "sigma", "t", "groups_checked", "witnesses",
                       "counterexamples", "skipped", "elapsed", "in_class", "searched",
                       "rejected_claims"]
    assert d["groups_checked"] == len(small_corpus)
    assert rep.lines()[-1] == rep.summary()


def test_timeout_turns_into_skip():
    big = Corpus([record_from_group("S5xS3", from_name("S5xS3"))])
    rep = cl.check_sigma_t_closed(N, S1, 3, big, timeout=0.01)
    assert rep.skipped and rep.ok


def test_suites_reject_wrong_partition():
    with pytest.raises(cl.SuiteError):
        cl.verify_theorem("pi-special", S1, [])
    with pytest.raises(cl.SuiteError):
        cl.verify_theorem("no-such-suite", S1, [])


def test_pi_choices_have_at_least_three():
    for s in ("sigma1", "pi:2,3", "blocks:[2,3]|rest", "pi:2"):
        assert len(cl._pi_choices(parse_sigma(s))) >= 3


@pytest.mark.parametrize("text,order,base", [
    ("blocks:[2,3]|rest", 24, 8),
    ("blocks:[2,5]|rest", 160, 32),
    ("blocks:|rest", 24, 8),
])
def test_non_local_witness(text, order, base):
    w = cl.non_sigma_local_witness(parse_sigma(text))
    assert (w.order, w.base_order) == (order, base)
    assert all(w.assertions().values())
    assert w.lines()[-1] == "supersoluble: false"


def test_non_local_witness_needs_two_primes_in_a_block():
    with pytest.raises(ValueError):
        cl.non_sigma_local_witness(S1)


def test_extension_lemma_checks(small_corpus):
    from sigmalocal.sigma import blockset
    assert cl.lemma32_check(small_corpus, S1, blockset([2]), 3).ok
    assert cl.lemma33_check(small_corpus, S1, blockset([3])).ok
