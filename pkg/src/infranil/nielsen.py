"""Nielsen numbers of iterates, their exponential-sum form and Nielsen zeta functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import sympy

from .cohomology import CohomologySpectrum
from .errors import (LemmaViolation, MissingLfPlus, NilpotentInput, NonIntegerAverage,
                     NotHyperbolic, ValidationFailed)
from .exactalg import (DEFAULT_PRECISION, Poly, RationalFunction, RationalMatrix, RecurrenceFit,
                       RootEnclosure, det, find_recurrence, format_rational, isolate_roots)
from .exactalg.linalg import rref
from .spectra import SpectralProfile, classify

_MAX_HALVINGS = 512


@dataclass(frozen=True)
class HolonomyData:
    """Finite matrix group ``F``: contains the identity, closed under products, invertible elements."""

    elements: tuple[RationalMatrix, ...]

    @classmethod
    def trivial(cls, dim: int):
        return cls((RationalMatrix.identity(dim),))

    @classmethod
    def from_matrices(cls, matrices, dim: int):
        """Add the identity, drop duplicates and check the group axioms we rely on."""
        ident = RationalMatrix.identity(dim)
        elems = [ident]
        for A in matrices:
            if A.dim != dim:
                raise ValueError(f"holonomy matrix of dimension {A.dim}, expected {dim}")
            if det(A) == 0:
                raise ValueError(f"holonomy matrix {A!r} is not invertible")
            if A not in elems:
                elems.append(A)
        members = set(elems)
        for A in elems:
            for B in elems:
                if A @ B not in members:
                    raise ValueError(f"holonomy is not closed: {A!r} * {B!r} is missing")
        return cls(tuple(elems))

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1


@dataclass(frozen=True)
class MapData:
    """Linear part ``D`` of an affine homotopy lift together with the holonomy group."""

    linear_part: RationalMatrix
    holonomy: HolonomyData
    gamma_plus_index: int = 1
    f_cohomology: CohomologySpectrum | None = None
    f_plus_cohomology: CohomologySpectrum | None = None
    lie_algebra: object = None

    def __post_init__(self):
        if self.gamma_plus_index not in (1, 2):
            raise ValueError("gamma_plus_index must be 1 or 2")
        if any(A.dim != self.dim for A in self.holonomy.elements):
            raise ValueError("holonomy and linear part dimensions differ")

    @classmethod
    def simple(cls, D, holonomy=(), **kw):
        D = D if isinstance(D, RationalMatrix) else RationalMatrix(D)
        hol = HolonomyData.from_matrices(
            [A if isinstance(A, RationalMatrix) else RationalMatrix(A) for A in holonomy], D.dim)
        return cls(D, hol, **kw)

    @property
    def dim(self) -> int:
        return self.linear_part.dim


_powers: dict = {}


def _power(D: RationalMatrix, k: int) -> RationalMatrix:
    cached = _powers.setdefault(D, [RationalMatrix.identity(D.dim)])
    while len(cached) <= k:
        cached.append(cached[-1] @ D)
    return cached[k]


@lru_cache(maxsize=None)
def _nielsen(D: RationalMatrix, holonomy: HolonomyData, k: int) -> int:
    Dk = _power(D, k)
    ident = RationalMatrix.identity(D.dim)
    total = sum((abs(det(ident - A @ Dk)) for A in holonomy.elements), Fraction(0))
    avg = total / holonomy.order
    if avg.denominator != 1:
        raise NonIntegerAverage(
            f"averaging formula gives the non-integer {format_rational(avg)} at k={k}")
    return int(avg)


def nielsen_number(fmap: MapData, k: int) -> int:
    """``N(f^k) = (1/#F) sum_{A in F} |det(I - A D^k)|``, exactly."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return _nielsen(fmap.linear_part, fmap.holonomy, k)


def nielsen_sequence(fmap: MapData, K: int) -> list[int]:
    if K < 1:
        raise ValueError("K must be at least 1")
    return [nielsen_number(fmap, k) for k in range(1, K + 1)]


def term_budget(dim: int) -> int:
    """Sequence length requested before fitting a recurrence."""
    return 2 * (2 ** dim + 2) + 8


@dataclass(frozen=True)
class Term:
    coefficient: int
    base: RootEnclosure
    block: int


@dataclass(frozen=True)
class Block:
    """Irreducible factor of the recurrence polynomial; all of its roots share one coefficient."""

    coefficient: int
    polynomial: Poly


@dataclass(frozen=True)
class ExponentialSum:
    """``N(f^k) = sum_i a_i lambda_i^k``, terms sorted by decreasing modulus."""

    terms: tuple[Term, ...]
    blocks: tuple[Block, ...]
    recurrence: RecurrenceFit | None = None
    precision: Fraction = DEFAULT_PRECISION
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def m(self) -> int:
        return len(self.terms)

    def evaluate(self, k: int) -> Fraction:
        """Exact value of the sum at ``k`` through power sums of each block."""
        total = Fraction(0)
        for b in self.blocks:
            sums = self._cache.get(b.polynomial)
            if sums is None or len(sums) < k:
                sums = b.polynomial.power_sums(max(k, 2 * len(sums or ()) + 8))
                self._cache[b.polynomial] = sums
            total += b.coefficient * sums[k - 1]
        return total

    def to_dict(self):
        return {
            "m": self.m,
            "terms": [{"coefficient": t.coefficient, "base": t.base.to_dict(), "block": t.block}
                      for t in self.terms],
            "blocks": [{"coefficient": b.coefficient,
                        "polynomial": [format_rational(c) for c in b.polynomial.coeffs]}
                       for b in self.blocks],
            "recurrenceOrder": None if self.recurrence is None else self.recurrence.order,
        }


def _factor_over_q(p: Poly):
    x = sympy.Symbol("x")
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], x,
                    domain="QQ")
    _, factors = sp.factor_list()
    out = []
    for f, mult in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append((Poly(coeffs).monic(), int(mult)))
    out.sort(key=lambda fm: (fm[0].degree, [float(c) for c in fm[0].coeffs]))
    return out


def _term_key(t: Term):
    hi = t.base.abs_bounds()[1]
    return (-hi, -t.base.center.re, -t.base.center.im)


def _assemble(blocks, precision, recurrence):
    halvings = 0
    while True:
        terms = []
        for j, b in enumerate(blocks):
            for e in isolate_roots(b.polynomial, precision):
                terms.append(Term(b.coefficient, e, j))
        if all(a.base.disjoint(c.base) for i, a in enumerate(terms) for c in terms[i + 1:]):
            break
        halvings += 1
        if halvings > _MAX_HALVINGS:
            raise LemmaViolation("roots of distinct blocks could not be separated")
        precision /= 2
    terms.sort(key=_term_key)
    return ExponentialSum(tuple(terms), tuple(blocks), recurrence, precision)


def fit_exponential_sum(seq, precision=DEFAULT_PRECISION) -> ExponentialSum:
    """Recover ``sum a_i lambda_i^k`` (``k >= 1``) from the first terms of an integer sequence.

    Coefficients are solved per irreducible factor of the recurrence polynomial
    from exact power sums, so no individual irrational root is ever used.
    """
    fit = find_recurrence(seq)
    P = fit.polynomial
    if P.degree < 1:
        return ExponentialSum((), (), fit, Fraction(precision))
    if P[0] == 0:
        raise LemmaViolation("recurrence polynomial has the root 0: sequence has a transient")
    factors = _factor_over_q(P)
    if any(m > 1 for _, m in factors):
        raise LemmaViolation("repeated recurrence root: coefficients would depend on k")
    L = fit.order
    sums = [q.power_sums(L) for q, _ in factors]
    rows = [[sums[j][k] for j in range(len(factors))] + [Fraction(seq[k])] for k in range(L)]
    red, pivots = rref(rows)
    nb = len(factors)
    if pivots != list(range(nb)):
        raise LemmaViolation("block coefficient system is singular or inconsistent")
    coeffs = [red[j][nb] for j in range(nb)]
    if any(c.denominator != 1 for c in coeffs):
        raise LemmaViolation(
            "non-integer coefficient in the exponential sum: "
            + ", ".join(format_rational(c) for c in coeffs))
    blocks = [Block(int(c), q) for c, (q, _) in zip(coeffs, factors)]
    result = _assemble(blocks, Fraction(precision), fit)
    for k, s in enumerate(seq, start=1):
        if result.evaluate(k) != s:
            raise ValidationFailed(f"exponential sum does not reproduce the term k={k}")
    return result


def _dominance_certified(s: ExponentialSum) -> bool:
    if not s.terms:
        return False
    top = s.terms[0].base
    if not (top.real and top.center.re - top.radius > 0):
        return False
    lo = top.abs_bounds()[0]
    return all(lo > t.base.abs_bounds()[1] for t in s.terms[1:])


def certify_dominant_term(s: ExponentialSum, profile: SpectralProfile) -> ExponentialSum:
    """Refine until the leading base is real, positive and strictly dominant; check it equals Sp(wedge D)."""
    prec = s.precision
    halvings = 0
    while not _dominance_certified(s):
        halvings += 1
        if halvings > _MAX_HALVINGS:
            raise LemmaViolation("no strictly dominant real positive base in the exponential sum")
        prec /= 2
        s = _assemble(list(s.blocks), prec, s.recurrence)
    top = s.terms[0]
    if top.coefficient < 1:
        raise LemmaViolation(f"leading coefficient {top.coefficient} is not >= 1")
    lo, hi = top.base.real_bounds()
    wedge = profile.wedge_spectral_radius
    if wedge is None or not (lo <= wedge.hi and wedge.lo <= hi):
        raise LemmaViolation("leading base does not match the spectral radius of wedge D")
    return s


def exponential_sum_form(fmap: MapData, precision=DEFAULT_PRECISION,
                         profile: SpectralProfile | None = None) -> ExponentialSum:
    """Certified ``N(f^k) = sum a_i lambda_i^k`` with ``a_1 >= 1`` and ``lambda_1 = Sp(wedge D)``."""
    if profile is None:
        profile = classify(fmap.linear_part, precision)
    if not profile.is_hyperbolic:
        raise NotHyperbolic("the linear part has an eigenvalue of modulus 1")
    if profile.is_nilpotent:
        raise NilpotentInput("nilpotent linear part: N(f^k) = 1 for every k")
    seq = nielsen_sequence(fmap, term_budget(fmap.dim))
    return certify_dominant_term(fit_exponential_sum(seq, precision), profile)


def nielsen_zeta_from_sum(s: ExponentialSum) -> RationalFunction:
    """``prod_i (1 - lambda_i z)^(-a_i)`` assembled block by block."""
    result = RationalFunction.one()
    for b in s.blocks:
        result = result * RationalFunction(b.polynomial.reverse()) ** (-b.coefficient)
    return result


def nielsen_zeta_from_table(Lf: RationalFunction, LfPlus: RationalFunction | None,
                            p: int, n: int, gamma_plus_index: int) -> RationalFunction:
    """Nielsen zeta function from the Lefschetz zeta functions of ``f`` (and of ``f_+``).

    The parities of ``p`` (real eigenvalues > 1) and ``n`` (real eigenvalues < -1)
    pick the cell; an odd ``n`` substitutes ``z -> -z``.
    """
    if gamma_plus_index not in (1, 2):
        raise ValueError("gamma_plus_index must be 1 or 2")
    if gamma_plus_index == 2 and LfPlus is None:
        raise MissingLfPlus("[Gamma : Gamma_+] = 2 needs the Lefschetz zeta function of f_+")
    odd_p, odd_n = p % 2 == 1, n % 2 == 1
    if odd_n:
        Lf = Lf.reflect()
        LfPlus = LfPlus.reflect() if LfPlus is not None else None
    if gamma_plus_index == 1:
        # (even, even) L ; (even, odd) 1/L(-z) ; (odd, even) 1/L ; (odd, odd) L(-z)
        return Lf.inverse() if odd_p != odd_n else Lf
    # (even, even) L+/L ; (even, odd) L(-z)/L+(-z) ; (odd, even) L/L+ ; (odd, odd) L+(-z)/L(-z)
    return Lf / LfPlus if odd_p != odd_n else LfPlus / Lf


@dataclass(frozen=True)
class ReidemeisterStatus:
    finite: bool
    value_equals_nielsen: bool
    value: int | None

    def to_dict(self):
        return {"finite": self.finite, "valueEqualsNielsen": self.value_equals_nielsen,
                "value": self.value}


def reidemeister_status(fmap: MapData, k: int = 1) -> ReidemeisterStatus:
    """``R(f^k)`` is infinite iff some ``det(I - A D^k)`` vanishes; otherwise it equals ``N(f^k)``."""
    ident = RationalMatrix.identity(fmap.dim)
    Dk = _power(fmap.linear_part, k)
    if any(det(ident - A @ Dk) == 0 for A in fmap.holonomy.elements):
        return ReidemeisterStatus(False, False, None)
    return ReidemeisterStatus(True, True, nielsen_number(fmap, k))


def semiconjugacy_warnings(fmap: MapData) -> list[str]:
    """Holonomy elements ``A`` with no ``A'`` in ``F`` such that ``D A = A' D``."""
    D = fmap.linear_part
    elems = fmap.holonomy.elements
    out = []
    for i, A in enumerate(elems):
        lhs = D @ A
        if not any(lhs == B @ D for B in elems):
            out.append(f"holonomy element {i} has no A' in F with D A = A' D")
    return out
