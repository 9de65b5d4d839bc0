from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from infranil.errors import InsufficientSequence, NilpotentInput, NotHyperbolic, NotNilpotent
from infranil.exactalg import RationalMatrix as M
from infranil.hper import (_least_k0prime, _root_lower_bound, ablss_certify, hper_bound,
                           hper_report, nilpotent_shortcut)
from infranil.nielsen import MapData, exponential_sum_form, nielsen_number, nielsen_sequence
from infranil.spectra import classify

CIRCLE = MapData.simple([[2]])
KLEIN = MapData.simple(M.diag(2, 3), [M.diag(1, -1)])
UPPER3 = M([[0, 1, 0], [0, 0, 1], [0, 0, 0]])


def trace_of(fmap):
    prof = classify(fmap.linear_part)
    return hper_bound(fmap, exponential_sum_form(fmap, profile=prof), prof)


def test_ablss_examples():
    seq = [2 ** k - 1 for k in range(1, 11)]
    assert ablss_certify(seq, 2) and ablss_certify(seq, 1)
    assert not ablss_certify([1] * 5, 2)
    assert ablss_certify([1] * 5, 1)
    with pytest.raises(InsufficientSequence):
        ablss_certify(seq, 11)
    # 6 = 2 * 3: N(6) > N(3) + N(2)
    assert ablss_certify([1, 1, 1, 1, 1, 3], 6)
    assert not ablss_certify([1, 1, 1, 1, 1, 2], 6)


def test_circle_trace_golden():
    t = trace_of(CIRCLE)
    assert (t.mu, t.epsilon, t.k0, t.l0, t.nu, t.k0prime, t.m0) == (
        Fraction(3, 2), Fraction(1, 7), 4, 4, Fraction(3, 2), 1, 9)
    assert 1 < t.tau_lower <= Fraction(15, 7)
    assert Fraction(15, 7) - t.tau_lower <= Fraction(1, 2 ** 20)


def test_klein_trace_golden():
    t = trace_of(KLEIN)
    assert (t.mu, t.epsilon, t.k0, t.l0) == (Fraction(7, 2), Fraction(5, 19), 3, 3)
    # golden values of this implementation's selection rules
    assert (t.nu, t.k0prime, t.m0) == (Fraction(7, 2), 1, 7)
    assert 7 - Fraction(1, 2 ** 20) <= t.tau_lower < 7


def test_hper_bound_preconditions():
    prof = classify(UPPER3)
    with pytest.raises(NilpotentInput):
        hper_bound(MapData.simple(UPPER3), None, prof)
    rot = M([[0, -1], [1, 0]])
    with pytest.raises(NotHyperbolic):
        hper_bound(MapData.simple(rot), None, classify(rot))
    with pytest.raises(NotHyperbolic):
        hper_report(MapData.simple(rot), 10)


def test_nilpotent_shortcut_examples():
    for F in ([], [M.diag(1, -1, 1)]):
        rep = nilpotent_shortcut(MapData.simple(UPPER3, F), 20)
        assert rep.certified_periods == (1,) and rep.nilpotent_conclusion
        assert rep.sequence == (1,) * 20
    with pytest.raises(NotNilpotent):
        nilpotent_shortcut(MapData.simple([[2]]))


def test_hper_report_examples():
    rep = hper_report(CIRCLE, 40)
    assert rep.certified_periods == tuple(range(1, 41)) and rep.cofinite_from == 9
    rep = hper_report(KLEIN, 30)
    assert rep.certified_periods == tuple(range(1, 31)) and rep.cofinite_from == 7
    rep = hper_report(MapData.simple(UPPER3), 10)
    assert rep.mode == "nilpotentHyperbolic" and rep.certified_periods == (1,)


def test_unknown_periods_are_labelled():
    rep = hper_report(MapData.simple([[-2]]), 20)
    # N = 3, 3, 9, 15, ...: period 2 has no certificate below m0
    assert 2 in rep.unknown_periods and 2 not in rep.certified_periods
    assert rep.to_dict()["unknownPeriods"] == list(rep.unknown_periods)


def _nonnilpotent(corpus):
    return {name: d.map for name, d in corpus.items() if not classify(d.map.linear_part).is_nilpotent}


def test_trace_invariants_and_soundness(corpus):
    for name, fmap in _nonnilpotent(corpus).items():
        t = trace_of(fmap)
        assert 1 < t.mu < t.lambda1_lower, name
        assert 0 < t.epsilon < 1 and t.epsilon <= (t.lambda1_lower - t.mu) / (t.lambda1_lower + t.mu)
        assert t.l0 >= t.k0
        assert 1 < t.nu <= t.mu
        if t.tau_lower is not None:
            assert t.nu <= (1 + t.tau_lower) / 2
        assert t.nu ** (2 ** (t.k0prime - 1)) > t.k0prime
        assert t.m0 == max(2 ** t.k0prime, 2 * t.l0 + 1)
        seq = nielsen_sequence(fmap, t.m0 + 30)
        assert all(seq[t.l0 - 1] > seq[l - 1] for l in range(1, t.l0)), name
        for k in range(t.m0, t.m0 + 31):
            assert ablss_certify(seq, k), (name, k)


def test_growth_lemma_and_corollary_instances(corpus):
    for name, fmap in _nonnilpotent(corpus).items():
        t = trace_of(fmap)
        seq = nielsen_sequence(fmap, max(t.k0 + 20, t.l0 + 20))
        N = lambda k: seq[k - 1]
        for k in range(t.k0, t.k0 + 11):
            for n in range(1, 11):
                assert N(k + n) > t.mu ** n * N(k), (name, k, n)
        for l in range(t.l0, t.l0 + 21):
            for k in range(1, l):
                assert N(l) > t.nu ** (l - k) * N(k), (name, k, l)
        assert all(N(k + 1) > N(k) for k in range(t.l0, t.l0 + 19))


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=Fraction(1001, 1000), max_value=50), st.integers(1, 6))
def test_root_lower_bound(r, e):
    q = _root_lower_bound(r, e)
    assert q > 1 and q ** e < r
    assert (q + Fraction(1, 2 ** 20)) ** e >= r or q + Fraction(1, 2 ** 20) > r


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=Fraction(65, 64), max_value=4, max_denominator=64))
def test_k0prime_is_least_and_sufficient(nu):
    k = _least_k0prime(nu)
    for j in range(k, k + 3):
        assert nu ** (2 ** (j - 1)) > j
    if k > 1:
        # k - 1 fails somewhere at or beyond itself
        assert not all(nu ** (2 ** (j - 1)) > j for j in range(k - 1, k + 1))


def test_report_dict_shape():
    d = hper_report(CIRCLE, 12).to_dict(with_derivation=True)
    assert d["cofiniteFrom"] == 9 and d["trace"]["m0"] == 9
    assert any("m0 = max" in line for line in d["trace"]["derivation"])
    assert "derivation" not in hper_report(CIRCLE, 12).to_dict()["trace"]
