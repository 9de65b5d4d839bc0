import random
from fractions import Fraction
from itertools import permutations

import pytest

from infranil.errors import EigenvalueOne, NotHyperbolic
from infranil.exactalg import Interval, RationalMatrix as M, char_poly, exterior_power, isolate_roots
from infranil.spectra import asymptotic_nielsen, classify, wedge_spectral_radius

from conftest import random_matrix

UPPER3 = M([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
CAT = M([[2, 1], [1, 1]])


def test_classify_examples():
    prof = classify(UPPER3)
    assert prof.is_nilpotent and prof.is_hyperbolic and prof.p == prof.n == 0
    assert all(e.exact and e.center.abs2() == 0 for e in prof.eigenvalues)
    prof = classify(CAT)
    assert prof.is_hyperbolic and (prof.p, prof.n) == (1, 0) and not prof.is_nilpotent
    assert not classify(M([[0, -1], [1, 0]])).is_hyperbolic
    assert classify(M.identity(2)).has_eigenvalue_one
    prof = classify(M.diag(2, -3, Fraction(1, 2), -5))
    assert (prof.p, prof.n) == (1, 2)


def test_wedge_spectral_radius_examples():
    assert wedge_spectral_radius(M.diag(2, 3)) == Interval.point(6)
    assert wedge_spectral_radius(M.diag(2, Fraction(1, 2))) == Interval.point(2)
    iv = wedge_spectral_radius(CAT, width=Fraction(1, 10 ** 6))
    assert iv.width <= Fraction(1, 10 ** 6)
    assert (2 * iv.lo - 3) ** 2 <= 5 <= (2 * iv.hi - 3) ** 2
    assert wedge_spectral_radius(UPPER3) == Interval.point(1)
    with pytest.raises(NotHyperbolic):
        wedge_spectral_radius(M([[0, -1], [1, 0]]))


def test_asymptotic_nielsen_examples():
    assert asymptotic_nielsen(UPPER3) == Interval.point(1)
    assert asymptotic_nielsen(M.diag(2, 3)) == Interval.point(6)
    assert asymptotic_nielsen(M([[3]])) == Interval.point(3)
    # rotation is not hyperbolic but 1 is not an eigenvalue: N_inf = 1
    assert asymptotic_nielsen(M([[0, -1], [1, 0]])) == Interval.point(1)
    with pytest.raises(EigenvalueOne):
        asymptotic_nielsen(M.identity(2))


def test_nilpotent_iff_power_vanishes():
    rng = random.Random(7)
    cases = [UPPER3, M([[0, 1], [0, 0]]), M([[1, 1], [-1, -1]]), CAT, M.zero(3)]
    cases += [random_matrix(rng, rng.randint(1, 4), -2, 2, (1,)) for _ in range(30)]
    for A in cases:
        assert classify(A).is_nilpotent == (A ** A.dim).is_zero()


def test_hyperbolic_enclosures_avoid_circle():
    rng = random.Random(8)
    for _ in range(30):
        A = random_matrix(rng, rng.randint(1, 4), -4, 4)
        prof = classify(A)
        if prof.is_hyperbolic:
            assert all(e.off_unit_circle() for e in prof.eigenvalues)


def test_wedge_radius_matches_compound_matrices():
    rng = random.Random(9)
    checked = 0
    while checked < 15:
        A = random_matrix(rng, rng.randint(1, 4), -4, 4, (1,))
        prof = classify(A)
        if not prof.is_hyperbolic or prof.is_nilpotent:
            continue
        iv = prof.wedge_spectral_radius
        # largest eigenvalue modulus over all exterior powers
        best_lo, best_hi = Fraction(0), Fraction(0)
        for i in range(A.dim + 1):
            encl = isolate_roots(char_poly(exterior_power(A, i)), Fraction(1, 2 ** 40))
            lo, hi = encl[0].abs_bounds(80)
            if hi > best_hi:
                best_lo, best_hi = lo, hi
        assert best_lo <= iv.hi and iv.lo <= best_hi
        checked += 1


def test_p_n_invariant_under_permutation_similarity():
    A = M([[2, 1, 0], [1, 1, 0], [0, 0, -3]])
    base = classify(A)
    for perm in permutations(range(3)):
        P = M([[int(perm[i] == j) for j in range(3)] for i in range(3)])
        prof = classify(P.transpose() @ A @ P)
        assert (prof.p, prof.n) == (base.p, base.n) == (1, 1)


def test_profile_invariants_on_random_matrices():
    rng = random.Random(10)
    for _ in range(25):
        A = random_matrix(rng, rng.randint(1, 4))
        prof = classify(A)
        assert prof.p + prof.n <= prof.dim
        if prof.wedge_spectral_radius is not None:
            assert prof.wedge_spectral_radius.lo <= prof.wedge_spectral_radius.hi
        d = prof.to_dict()
        assert d["hyperbolic"] == prof.is_hyperbolic and len(d["charPoly"]) == prof.dim + 1
