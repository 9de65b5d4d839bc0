import random
from fractions import Fraction
from itertools import combinations

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from infranil.errors import ValidationFailed
from infranil.exactalg import (Interval, Poly, QComplex, RationalFunction, RationalMatrix,
                               berlekamp_massey, char_poly, det, exp_series, exterior_power,
                               find_recurrence, format_rational, isolate_roots, parse_rational,
                               sqrt_bounds, unit_circle_by_enclosures, unit_circle_root_test)
from infranil.exactalg.linalg import nullspace, rank
from infranil.exactalg.rational import ceil_dyadic, floor_dyadic

from conftest import random_matrix, random_unit_corpus

M = RationalMatrix
small = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def matrices(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n).map(M)


def _brute_det(rows):
    # cofactor expansion, independent of Bareiss
    if len(rows) == 1:
        return rows[0][0]
    return sum((-1) ** j * rows[0][j] * _brute_det([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(len(rows)))


# rationals ---------------------------------------------------------------

def test_parse_and_format_rational():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(-4) == -4
    assert parse_rational(" -7 / 14 ") == Fraction(-1, 2)
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(5) == "5"
    for bad in ("1.5", 1.5, True, "1/0", "x", None):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_sqrt_and_dyadic_bounds():
    assert sqrt_bounds(Fraction(9, 4)) == (Fraction(3, 2), Fraction(3, 2))
    lo, hi = sqrt_bounds(Fraction(2), 40)
    assert lo * lo < 2 < hi * hi and hi - lo <= Fraction(1, 2 ** 39)
    q = Fraction(1, 3)
    assert floor_dyadic(q, 10) <= q <= ceil_dyadic(q, 10)
    assert floor_dyadic(Fraction(5, 4), 10) == Fraction(5, 4)


def test_qcomplex_arithmetic():
    i = QComplex(0, 1)
    assert i * i == QComplex(-1)
    assert (QComplex(1, 2) / QComplex(1, 2)) == QComplex(1)
    assert QComplex(3, 4).abs2() == 25
    lo, hi = QComplex(3, 4).abs_bounds()
    assert lo == hi == 5


def test_interval_basics():
    a = Interval(Fraction(1), Fraction(2))
    assert Fraction(3, 2) in a and a.width == 1
    assert a.intersects(Interval(Fraction(2), Fraction(5)))
    assert Interval(Fraction(1, 2), Fraction(3, 4)).hull_max(1) == Interval.point(1)


# determinants and characteristic polynomials -------------------------------

def test_det_examples():
    assert det(M.identity(3)) == 1
    assert det(M([[2, 1], [1, 1]])) == 1
    assert det(M([[1 - 2, 0], [0, 1 - 3]])) == 2


def test_char_poly_examples():
    z = Poly.z()
    assert char_poly(M.zero(2)) == z ** 2
    assert char_poly(M([[2, 1], [1, 1]])) == Poly([1, -3, 1])
    assert char_poly(M.diag(2, 3)) == Poly([6, -5, 1])
    assert str(char_poly(M([[2, 1], [1, 1]]))) == "z^2 - 3z + 1"


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_det_matches_cofactor_expansion(data):
    n = data.draw(st.integers(1, 4))
    A = data.draw(matrices(n))
    rows = [[A[i, j] for j in range(n)] for i in range(n)]
    assert det(A) == _brute_det(rows)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_det_multiplicative(data):
    n = data.draw(st.integers(1, 5))
    A, B = data.draw(matrices(n)), data.draw(matrices(n))
    assert det(A @ B) == det(A) * det(B)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_char_poly_similarity_invariant(data):
    n = data.draw(st.integers(1, 5))
    A, P = data.draw(matrices(n)), data.draw(matrices(n))
    if det(P) == 0:
        P = P + M.identity(n).scale(97)
    if det(P) == 0:
        return
    assert char_poly(P.inverse() @ A @ P) == char_poly(A)


def test_char_poly_is_det_of_zI_minus_M():
    rng = random.Random(3)
    for _ in range(10):
        A = random_matrix(rng, 4)
        cp = char_poly(A)
        for t in (Fraction(-2), Fraction(1, 3), Fraction(5)):
            assert cp(t) == det(M.identity(4).scale(t) - A)


# exterior powers -------------------------------------------------------------

def test_exterior_power_examples():
    A = M([[1, 2, 0], [3, -1, 4], [0, 5, 2]])
    assert exterior_power(A, 1) == A
    assert exterior_power(M.diag(2, 3, 5), 2) == M.diag(6, 10, 15)
    assert exterior_power(A, 3) == M([[det(A)]])
    assert exterior_power(A, 0) == M([[1]])
    with pytest.raises(ValueError):
        exterior_power(A, 4)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_cauchy_binet(data):
    n = data.draw(st.integers(1, 5))
    i = data.draw(st.integers(0, n))
    A, B = data.draw(matrices(n)), data.draw(matrices(n))
    assert exterior_power(A @ B, i) == exterior_power(A, i) @ exterior_power(B, i)


def test_compound_eigenvalues_are_products():
    rng = random.Random(11)
    for _ in range(6):
        n = rng.randint(2, 4)
        eig = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3, 5]), rng.choice([1, 2])) for _ in range(n)]
        P = random_matrix(rng, n)
        while det(P) == 0:
            P = random_matrix(rng, n)
        A = P.inverse() @ M.diag(*eig) @ P
        for i in range(1, n + 1):
            products = sorted(Fraction(1) * _prod(c) for c in combinations(eig, i))
            cp = char_poly(exterior_power(A, i))
            assert cp == Poly.from_roots(products)
            found = sorted(e.center.re for e in isolate_roots(cp) for _ in range(e.multiplicity))
            assert found == products


def _prod(xs):
    out = Fraction(1)
    for x in xs:
        out *= x
    return out


# polynomials -----------------------------------------------------------------

def test_poly_arithmetic_and_gcd():
    p = Poly.from_roots([1, 2, 2, 3])
    q = Poly.from_roots([2, 2, 5])
    assert p.gcd(q) == Poly.from_roots([2, 2])
    quo, rem = divmod(p, q)
    assert quo * q + rem == p and rem.degree < q.degree
    assert p.squarefree_decomposition() == [(Poly.from_roots([1, 3]), 1), (Poly.from_roots([2]), 2)]
    assert Poly([1, 2, 3]).reverse() == Poly([3, 2, 1])


def test_sturm_counts():
    p = Poly.from_roots([-3, Fraction(1, 2), 1, 4])
    assert p.count_distinct_real_roots() == 4
    assert p.count_distinct_real_roots(Fraction(0), Fraction(1)) == 2  # (0, 1]
    assert p.count_distinct_real_roots(Fraction(1), float("inf")) == 1
    assert Poly([1, 0, 1]).count_distinct_real_roots() == 0
    assert Poly.from_roots([2, 2, 5]).count_real_roots(Fraction(1), float("inf")) == 3


def test_power_sums_newton():
    p = Poly.from_roots([2, 3, -1])
    assert p.power_sums(4) == [2 + 3 - 1, 4 + 9 + 1, 8 + 27 - 1, 16 + 81 + 1]


def test_rational_function_normalization_and_series():
    r = RationalFunction(Poly([2, -4]), Poly([2, -2]))
    assert r.value_at_zero() == 1
    assert r == RationalFunction(Poly([1, -2]), Poly([1, -1]))
    # (1 - 2z)/(1 - z) = exp(sum (1 - 2^k) z^k / k)
    X = r.log_derivative_coefficients(10)
    assert X == [1 - 2 ** k for k in range(1, 11)]
    assert r.series(10) == exp_series(X, 10)
    assert str(RationalFunction(Poly([1, -1]), Poly([1, -2]))) == "(1 - z) / (1 - 2z)"


# root enclosures -------------------------------------------------------------

def test_isolate_roots_examples():
    e = isolate_roots(Poly([6, -5, 1]), Fraction(1, 2 ** 20))
    assert sorted(x.center.re for x in e) == [2, 3] and all(x.radius <= Fraction(1, 2 ** 20) for x in e)
    e = isolate_roots(Poly([1, 0, 1]))
    assert len(e) == 2
    assert any(x.contains(QComplex(0, 1)) for x in e) and any(x.contains(QComplex(0, -1)) for x in e)
    e = isolate_roots(Poly([1, -3, 1]))
    lo, hi = e[0].real_bounds()
    # (3 + sqrt 5)/2 in [lo, hi]  <=>  (2lo - 3)^2 <= 5 <= (2hi - 3)^2 for lo > 3/2
    assert e[0].real and (2 * lo - 3) ** 2 <= 5 <= (2 * hi - 3) ** 2
    assert abs(complex(e[1].center) - (3 - 5 ** 0.5) / 2) < 1e-9


def test_isolate_roots_multiplicities_and_disjointness():
    rng = random.Random(5)
    for _ in range(40):
        deg = rng.randint(1, 7)
        p = Poly([rng.randint(-9, 9) for _ in range(deg)] + [rng.choice([-2, -1, 1, 3])])
        if rng.random() < 0.3:
            p = p * Poly.from_roots([1, 1])
        prec = Fraction(1, 2 ** 24)
        encl = isolate_roots(p, prec)
        assert sum(e.multiplicity for e in encl) == p.degree
        assert all(e.radius <= prec for e in encl)
        assert all(a.disjoint(b) for i, a in enumerate(encl) for b in encl[i + 1:])
        # independent check: every high-precision root lies in some disk
        with mpmath.workdps(60):
            approx = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator
                                       for c in reversed(p.coeffs)], maxsteps=400, extraprec=400)
        for r in approx:
            assert any(abs(complex(r) - complex(e.center)) <= float(e.radius) + 1e-12 for e in encl)


def test_unit_circle_examples():
    assert unit_circle_root_test(Poly([1, -3, 1])) is False
    assert unit_circle_root_test(Poly([1, 0, 1])) is True
    assert unit_circle_root_test(Poly([-1, 1])) is True
    assert unit_circle_root_test(Poly([1, -1, 1])) is True
    # Salem-type polynomial: reciprocal, roots on and off the circle
    lehmer = Poly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    assert unit_circle_root_test(lehmer) is True
    assert unit_circle_root_test(Poly([1, 3, 1])) is False


def test_unit_circle_against_enclosures_and_mpmath():
    for p in random_unit_corpus():
        exact = unit_circle_root_test(p)
        assert exact == unit_circle_by_enclosures(p), str(p)
        with mpmath.workdps(80):
            roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)],
                                     maxsteps=500, extraprec=600)
            near = any(abs(abs(r) - 1) < mpmath.mpf(10) ** -40 for r in roots)
        assert exact == near, str(p)


# recurrences -----------------------------------------------------------------

def test_find_recurrence_examples():
    fit = find_recurrence([2 ** k - 1 for k in range(1, 21)])
    assert fit.order == 2 and fit.polynomial == Poly([2, -3, 1]) and fit.validated
    fit = find_recurrence([1] * 12)
    assert fit.order == 1 and fit.polynomial == Poly([-1, 1])
    fit = find_recurrence([6 ** k - 3 ** k for k in range(1, 21)])
    assert fit.polynomial == Poly([18, -9, 1])
    assert fit.extend([6 ** k - 3 ** k for k in range(1, 21)], 3)[-1] == 6 ** 23 - 3 ** 23


def test_find_recurrence_rejects_non_recurrent():
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]
    with pytest.raises(ValidationFailed):
        find_recurrence(primes)
    with pytest.raises(ValueError):
        find_recurrence([])


def test_berlekamp_massey_zero_sequence():
    C, L = berlekamp_massey([0, 0, 0])
    assert L == 0 and C == [1]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3).filter(bool), st.integers(-7, 7).filter(bool)),
                min_size=1, max_size=6, unique_by=lambda t: t[1]))
def test_recurrence_recovers_minimal_polynomial(terms):
    seq = [sum(a * lam ** k for a, lam in terms) for k in range(1, 2 * len(terms) + 9)]
    fit = find_recurrence(seq)
    assert fit.polynomial == Poly.from_roots([lam for _, lam in terms])


# linear algebra helpers ----------------------------------------------------------

def test_nullspace_and_rank():
    rows = [[1, 2, 3], [2, 4, 6]]
    basis = nullspace(rows, 3)
    assert len(basis) == 2 and rank(rows) == 1
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


def test_isolation_regressions():
    # a rational root next to an irrational one must not be matched to the wrong approximation
    p = Poly([4, 3]) * Poly([-7, -1, 3])
    encl = isolate_roots(p)
    assert sum(e.exact for e in encl) == 1 and len(encl) == 3
    assert any(e.exact and e.center.re == Fraction(-4, 3) for e in encl)
    # tiny Weierstrass corrections must not be swamped by square-root rounding
    p = Poly([1, 1, 1]) * Poly([-6, -5, -2, 1])
    encl = isolate_roots(p, Fraction(1, 2 ** 64))
    assert all(e.radius <= Fraction(1, 2 ** 64) for e in encl)
