import pytest

from sigmalocal import formations as fm
from sigmalocal.builders import cyclic, from_name, symmetric
from sigmalocal.sigma import blockset, parse_sigma, sigma1
from sigmalocal.structure import as_section

S1 = sigma1()
PI23 = parse_sigma("pi:2,3")
B23 = parse_sigma("blocks:[2,3]|rest")


def _claimed():
    out = [fm.builtin(n) for n in ("identity", "abelian", "nilpotent", "soluble", "supersoluble",
                                   "metanilpotent", "derived_nilpotent", "sigma_nilpotent",
                                   "meta_sigma_nilpotent", "sigma_soluble")]
    out += [fm.builtin("pi_special", primes=[2]), fm.builtin("pi_soluble", primes=[2, 3]),
            fm.builtin("meta_pi_special", primes=[3]),
            fm.builtin("sigma_soluble_pi_closed", Pi=blockset([3]))]
    return out


def test_residuals_s4():
    G = symmetric(4)
    assert fm.residual(G, fm.builtin("A"), S1).order() == 12
    assert fm.residual(G, fm.builtin("N"), S1).order() == 12
    assert fm.residual(G, fm.builtin("S"), S1).order() == 1
    assert fm.residual(G, fm.builtin("U"), S1).order() == 4
    assert fm.residual(G, fm.builtin("Nsigma"), B23).order() == 1


def test_residual_nested_for_nested_classes(small_corpus):
    chain = [fm.builtin("I"), fm.builtin("A"), fm.builtin("N"), fm.builtin("S")]
    for gid, G in small_corpus.groups():
        S = as_section(G)
        orders = [S.rel_order(fm._residual_id(S, F, S1)) for F in chain]
        assert orders == sorted(orders, reverse=True), gid
        assert orders[0] == S.order


def test_products():
    G = symmetric(4)
    N, A = fm.builtin("N"), fm.builtin("A")
    assert not fm.gaschuetz_product(N, A).member(G, S1)
    assert fm.class_product(N, N).member(symmetric(3), S1)
    assert not fm.class_product(N, N).member(G, S1)
    assert fm.class_product(fm.class_product(N, N), N).member(G, S1)
    # S3 has a normal 3-subgroup with 2-group quotient, not the other way round
    G3, G2 = fm.builtin("G_Pi", Pi=blockset([3])), fm.builtin("G_Pi", Pi=blockset([2]))
    assert fm.class_product(G3, G2).member(symmetric(3), S1)
    assert not fm.class_product(G2, G3).member(symmetric(3), S1)


def test_lf_membership():
    N = fm.builtin("N")
    f = fm.constant(N)
    assert not fm.lf_sigma_member(symmetric(4), f, S1)
    assert fm.lf_sigma_member(symmetric(3), f, S1)
    assert fm.lf_sigma_member(cyclic(1), fm.constant(None), S1)
    assert not fm.lf_sigma_member(cyclic(2), fm.constant(None), S1)
    for G in (symmetric(3), symmetric(4), from_name("C2wrC3")):
        assert fm.lemma23_equivalence_check(G, f, S1)


def test_lf_identity_is_sigma_nilpotent(small_corpus, sigma):
    f = fm.constant(fm.builtin("I"))
    Ns = fm.builtin("Nsigma")
    for gid, G in small_corpus.groups():
        assert fm.lf_sigma_member(G, f, sigma) == Ns.member(G, sigma), gid


def test_pi_special_and_soluble():
    P = fm.builtin("pi_special", primes=[2, 3])
    assert P.member(cyclic(6), S1) and not P.member(symmetric(4), S1)
    Q = fm.builtin("pi_soluble", primes=[2])
    assert Q.member(symmetric(4), S1)
    assert not Q.member(from_name("A5"), S1)
    assert fm.builtin("pi_soluble", primes=[7]).member(from_name("A5"), S1)


@pytest.mark.parametrize("cls", _claimed(), ids=lambda c: c.name)
def test_claims_hold_on_small_corpus(cls, small_corpus):
    for s in (S1, PI23):
        if "formation" in cls.claims:
            assert fm.is_formation_on(cls, small_corpus, s).ok
        if "hereditary" in cls.claims:
            assert fm.is_hereditary_on(cls, small_corpus, s).ok
        if "saturated" in cls.claims:
            assert fm.is_saturated_on(cls, small_corpus, s).ok


def test_abelian_is_not_saturated(small_corpus):
    rep = fm.is_saturated_on(fm.builtin("A"), small_corpus, S1)
    assert not rep.ok
    assert any("Q8" in v for v in rep.violations)


def test_parse_class():
    G = symmetric(4)
    assert fm.parse_class("N * N * N", S1).member(G, S1)
    assert not fm.parse_class("N o A", S1).member(G, S1)
    assert fm.parse_class("S & (N2 * A)", S1).member(G, S1)
    lf = fm.parse_class("LF(f: {2}->N, *->A)", S1)
    assert lf.member(symmetric(3), S1) == fm.lf_sigma_member(
        symmetric(3), fm.FormationSigmaFunction({S1.block_of(2): fm.builtin("N")},
                                                fm.builtin("A")), S1)
    assert fm.parse_class("GPi[2,3]", S1).member(G, S1)
    assert not fm.parse_class("GPi'[2]", S1).member(G, S1)
    lf2 = fm.parse_class("LF(f: {2,3}->Nsigma, rest->Empty)", B23)
    assert lf2.member(G, B23) and not lf2.member(cyclic(5), B23)


@pytest.mark.parametrize("text", ["N *", "Foo", "LF(f: {2,3}->N)", "(N", "N ) A", "GPi"])
def test_parse_class_errors(text):
    with pytest.raises((fm.ClassSyntaxError, KeyError)):
        fm.parse_class(text, S1)
