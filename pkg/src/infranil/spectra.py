"""Spectral classification of the linear part of an affine map."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CertificationError, EigenvalueOne, NotHyperbolic
from .exactalg import (DEFAULT_PRECISION, Interval, Poly, RationalMatrix, RootEnclosure,
                       char_poly, format_rational, isolate_roots, unit_circle_root_test)

# 2^-4096 is far beyond anything a certified decision on dims <= 8 needs
_MAX_HALVINGS = 4064


@dataclass(frozen=True)
class SpectralProfile:
    dim: int
    char_poly: Poly
    eigenvalues: tuple[RootEnclosure, ...]
    is_hyperbolic: bool
    is_nilpotent: bool
    has_eigenvalue_one: bool
    p: int
    n: int
    wedge_spectral_radius: Interval | None
    asymptotic_nielsen: Interval | None
    precision: Fraction = DEFAULT_PRECISION

    def to_dict(self):
        return {
            "dim": self.dim,
            "charPoly": [format_rational(c) for c in self.char_poly.coeffs],
            "eigenvalues": [e.to_dict() for e in self.eigenvalues],
            "hyperbolic": self.is_hyperbolic,
            "nilpotent": self.is_nilpotent,
            "eigenvalueOne": self.has_eigenvalue_one,
            "p": self.p,
            "n": self.n,
            "wedgeSpectralRadius": None if self.wedge_spectral_radius is None
            else self.wedge_spectral_radius.to_strings(),
            "asymptoticNielsen": None if self.asymptotic_nielsen is None
            else self.asymptotic_nielsen.to_strings(),
        }


def _multiplicity(p: Poly, r) -> int:
    factor = Poly((-Fraction(r), 1))
    m = 0
    while p.degree >= 1 and p(Fraction(r)) == 0:
        p = p.exact_div(factor)
        m += 1
    return m


def _work_bits(precision: Fraction) -> int:
    return max(64, precision.denominator.bit_length() + 16)


def large_moduli_product(eigenvalues, bits: int = 64) -> Interval:
    """Certified interval for ``prod max(1, |nu|)`` over the enclosures (with multiplicity)."""
    lo, hi = Fraction(1), Fraction(1)
    for e in eigenvalues:
        if e.inside_unit_circle():
            continue
        a, b = e.abs_bounds(bits)
        lo *= max(Fraction(1), a) ** e.multiplicity
        hi *= max(Fraction(1), b) ** e.multiplicity
    return Interval(lo, hi)


def _refined_eigenvalues(cp: Poly, precision: Fraction, hyperbolic: bool):
    encl = isolate_roots(cp, precision)
    if not hyperbolic:
        return encl, precision
    halvings = 0
    while not all(e.off_unit_circle() for e in encl):
        halvings += 1
        if halvings > _MAX_HALVINGS:
            raise CertificationError("eigenvalue enclosures did not separate from the unit circle")
        precision /= 2
        encl = isolate_roots(cp, precision)
    return encl, precision


def classify(D: RationalMatrix, precision: Fraction = DEFAULT_PRECISION) -> SpectralProfile:
    """Exact hyperbolicity/nilpotency decisions plus certified eigenvalue enclosures.

    ``p`` and ``n`` count real eigenvalues in ``(1, inf)`` and ``(-inf, -1)`` with
    multiplicity, by Sturm sequences on the square-free factors.
    """
    dim = D.dim
    cp = char_poly(D)
    nilpotent = cp == Poly.z() ** dim
    hyperbolic = not unit_circle_root_test(cp)
    one = cp(Fraction(1)) == 0
    p = cp.count_real_roots(Fraction(1), float("inf"))
    n = cp.count_real_roots(float("-inf"), Fraction(-1)) - _multiplicity(cp, -1)
    encl, prec = _refined_eigenvalues(cp, Fraction(precision), hyperbolic)
    bits = _work_bits(prec)
    wedge = large_moduli_product(encl, bits) if hyperbolic else None
    if nilpotent:
        wedge = Interval.point(1)
    asym = None
    if not one:
        asym = wedge if wedge is not None else large_moduli_product(encl, bits)
    return SpectralProfile(dim, cp, tuple(encl), hyperbolic, nilpotent, one, p, n, wedge, asym, prec)


def wedge_spectral_radius(D: RationalMatrix, profile: SpectralProfile | None = None,
                          width: Fraction | None = None) -> Interval:
    """Certified interval around ``prod_{|nu| > 1} |nu|`` (``[1, 1]`` when nothing exceeds 1).

    With ``width`` the enclosures are refined until the interval is at most that wide.
    """
    if profile is None:
        profile = classify(D)
    if not profile.is_hyperbolic:
        raise NotHyperbolic("the linear part has an eigenvalue of modulus 1")
    if profile.is_nilpotent:
        return Interval.point(1)
    iv, prec, encl = profile.wedge_spectral_radius, profile.precision, profile.eigenvalues
    halvings = 0
    while width is not None and iv.width > width:
        halvings += 1
        if halvings > _MAX_HALVINGS:
            raise CertificationError("could not narrow the spectral radius interval")
        prec /= 2
        encl, prec = _refined_eigenvalues(profile.char_poly, prec, True)
        iv = large_moduli_product(encl, _work_bits(prec))
    return iv


def asymptotic_nielsen(D: RationalMatrix, profile: SpectralProfile | None = None,
                       width: Fraction | None = None) -> Interval:
    """``max(1, Sp(wedge D))``, the growth rate of the Nielsen numbers of iterates."""
    if profile is None:
        profile = classify(D)
    if profile.has_eigenvalue_one:
        raise EigenvalueOne("1 is an eigenvalue of the linear part")
    if profile.is_hyperbolic:
        return wedge_spectral_radius(D, profile, width).hull_max(1)
    # modulus-1 eigenvalues contribute a factor 1 whichever side their disks land on
    iv, prec = profile.asymptotic_nielsen, profile.precision
    while width is not None and iv.width > width:
        prec /= 2
        iv = large_moduli_product(isolate_roots(profile.char_poly, prec), _work_bits(prec))
    return iv.hull_max(1)
