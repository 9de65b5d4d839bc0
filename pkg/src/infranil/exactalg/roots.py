"""Certified complex root enclosures and the exact unit-circle root test.

Approximations come from :func:`mpmath.polyroots`; they are only starting
points. Every returned disk is certified in exact rational arithmetic with the
Weierstrass (Braess-Hadeler) inclusion theorem: for a monic polynomial of
degree ``d`` and pairwise distinct approximations ``z_i`` the disks
``|z - z_i| <= d |W_i|``, ``W_i = p(z_i) / prod_{j != i} (z_i - z_j)``, cover all
roots, and a connected component made of ``k`` disks holds exactly ``k`` roots.
We only accept pairwise disjoint disks, so each one holds exactly one root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .poly import Poly
from .rational import QComplex, format_rational

DEFAULT_PRECISION = Fraction(1, 2**32)
_MAX_WORK_BITS = 1 << 14


@dataclass(frozen=True)
class RootEnclosure:
    """Closed disk ``|z - center| <= radius`` holding exactly ``multiplicity`` roots.

    ``real`` is set when the disk is certified to hold a single real root (the
    disk is centred on the real axis and holds one simple root of a real
    polynomial, so the root equals its own conjugate).
    """

    center: QComplex
    radius: Fraction
    multiplicity: int = 1
    real: bool = False

    @property
    def exact(self) -> bool:
        return self.radius == 0

    def abs_bounds(self, bits: int | None = None) -> tuple[Fraction, Fraction]:
        if bits is None:
            # keep the square-root slack well below the disk radius
            bits = 64 if self.radius == 0 else max(64, _log2_inverse(self.radius) + 8)
        lo, hi = self.center.abs_bounds(bits)
        return max(Fraction(0), lo - self.radius), hi + self.radius

    def real_bounds(self) -> tuple[Fraction, Fraction]:
        return self.center.re - self.radius, self.center.re + self.radius

    def contains(self, z: QComplex) -> bool:
        return (z - self.center).abs2() <= self.radius * self.radius

    def disjoint(self, other: "RootEnclosure") -> bool:
        s = self.radius + other.radius
        return (self.center - other.center).abs2() > s * s

    def outside_unit_circle(self) -> bool:
        """Every point of the disk has modulus > 1."""
        s = 1 + self.radius
        return self.center.abs2() > s * s

    def inside_unit_circle(self) -> bool:
        """Every point of the disk has modulus < 1."""
        if self.radius >= 1:
            return False
        s = 1 - self.radius
        return self.center.abs2() < s * s

    def off_unit_circle(self) -> bool:
        return self.outside_unit_circle() or self.inside_unit_circle()

    def to_dict(self):
        return {
            "center": [format_rational(self.center.re), format_rational(self.center.im)],
            "radius": format_rational(self.radius),
            "multiplicity": self.multiplicity,
            "real": self.real,
        }

    def __str__(self):
        c = complex(self.center)
        if self.real:
            body = f"{c.real:.12g}"
        else:
            body = f"{c.real:.12g}{c.imag:+.12g}i"
        return body if self.exact else f"{body} (+/- {float(self.radius):.2e})"


def _to_mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _mp_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def _approximate(p: Poly, bits: int):
    """Numerical roots of ``p`` at roughly ``bits`` binary digits."""
    steps = 50 + 10 * p.degree
    with mpmath.workprec(bits + 32):
        coeffs = [_to_mpf(c) for c in reversed(p.coeffs)]
        for _ in range(6):
            try:
                roots = mpmath.polyroots(coeffs, maxsteps=steps, extraprec=bits)
                break
            except mpmath.libmp.NoConvergence:
                steps *= 2
        else:
            raise ArithmeticError(f"root approximation did not converge for {p}")
        out = []
        for r in roots:
            r = mpmath.mpc(r)
            out.append(QComplex(_mp_to_fraction(r.real), _mp_to_fraction(r.imag)))
    return out


def _log2_inverse(q: Fraction) -> int:
    """Roughly ``-log2(q)`` for ``0 < q``; negative for ``q > 1``."""
    return q.denominator.bit_length() - q.numerator.bit_length()


def _abs_upper(z: QComplex) -> Fraction:
    a2 = z.abs2()
    if a2 == 0:
        return Fraction(0)
    return z.abs_bounds(64 + max(0, _log2_inverse(a2) // 2))[1]


def _weierstrass_radii(p: Poly, approx):
    d = p.degree
    radii = []
    for i, zi in enumerate(approx):
        den = QComplex(1)
        for j, zj in enumerate(approx):
            if j != i:
                den = den * (zi - zj)
        if den.abs2() == 0:
            return None
        w = p(zi) / den
        radii.append(d * _abs_upper(w))
    return radii


def _snap(approx, bits):
    """Move approximations with negligible imaginary part onto the real axis."""
    tol = Fraction(1, 1 << max(8, bits // 2))
    out = []
    for z in approx:
        if z.im != 0 and abs(z.im) < tol:
            z = QComplex(z.re, 0)
        out.append(z)
    if len(set(out)) != len(out):
        return list(approx)
    return out


def _isolate_squarefree(p: Poly, precision: Fraction, multiplicity: int):
    """Enclosures for the roots of a monic square-free ``p``."""
    base = []
    q = p
    if q[0] == 0:
        base.append(QComplex(0))
        q = q.exact_div(Poly.z())
    if q.degree < 1:
        return [RootEnclosure(z, Fraction(0), multiplicity, True) for z in base]
    # any rational root of the primitive integer form is a multiple of 1/lead
    lead = int(q.primitive().lc)
    bits = max(64, precision.denominator.bit_length() - precision.numerator.bit_length() + 24)
    while bits <= _MAX_WORK_BITS:
        approx = _approximate(q, bits)
        tol = Fraction(1, 1 << (bits // 2))
        exact, rest, cur = list(base), [], q
        for z in approx:
            cand = Fraction(round(z.re * lead), lead)
            near = abs(z.im) < tol and abs(z.re - cand) < tol
            if near and cur.degree >= 1 and cur(cand) == 0:
                cur = cur.exact_div(Poly((-cand, 1)))
                exact.append(QComplex(cand))
            else:
                rest.append(z)
        encl = [RootEnclosure(z, Fraction(0), multiplicity, True) for z in exact]
        if cur.degree == 0:
            return encl
        rest = _snap(rest, bits)
        radii = _weierstrass_radii(cur, rest)
        if radii is not None and max(radii) <= precision:
            encl += [RootEnclosure(z, r, multiplicity, z.im == 0) for z, r in zip(rest, radii)]
            if _pairwise_disjoint(encl):
                return encl
        bits *= 2
    raise ArithmeticError(f"could not certify the roots of {p} at precision {precision}")


def _pairwise_disjoint(encl) -> bool:
    return all(a.disjoint(b) for i, a in enumerate(encl) for b in encl[i + 1:])


@lru_cache(maxsize=4096)
def _isolate_cached(coeffs, precision: Fraction):
    p = Poly(coeffs)
    target = precision
    while True:
        out = []
        for f, m in p.squarefree_decomposition():
            out.extend(_isolate_squarefree(f, target, m))
        if _pairwise_disjoint(out):
            return tuple(sorted(out, key=_order_key))
        target /= 2


def _order_key(e: RootEnclosure):
    return (-e.center.abs2(), -e.center.re, -e.center.im)


def isolate_roots(p: Poly, precision: Fraction = DEFAULT_PRECISION) -> list[RootEnclosure]:
    """Disjoint certified disks of radius ``<= precision`` covering every complex root of ``p``.

    Multiplicities sum to ``deg p``. Rational roots are found exactly and get radius 0.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    if p.degree == 0:
        return []
    return list(_isolate_cached(p.coeffs, Fraction(precision)))


def self_reciprocal_part(p: Poly) -> Poly:
    """Largest monic factor of ``p`` whose root set is closed under ``z -> 1/z``."""
    g = p.monic()
    while True:
        h = g.gcd(g.reverse())
        if h.degree == g.degree:
            return g
        g = h


def _to_trace_polynomial(g: Poly) -> Poly:
    """``h`` with ``g(z) = z^m h(z + 1/z)`` for a palindromic ``g`` of degree ``2m``."""
    m = g.degree // 2
    w = Poly.z()
    prev, cur = Poly((2,)), w
    h = Poly((g[m],))
    for k in range(1, m + 1):
        h = h + cur * g[m + k]
        prev, cur = cur, w * cur - prev
    return h


def unit_circle_root_test(p: Poly) -> bool:
    """Exact decision: does ``p`` have a root of modulus exactly 1?"""
    if p.is_zero():
        raise ValueError("the zero polynomial")
    if p(Fraction(1)) == 0 or p(Fraction(-1)) == 0:
        return True
    t = p.trailing_zeros()
    if t:
        p = Poly(p.coeffs[t:])
    if p.degree < 1:
        return False
    # a unimodular root z of a real polynomial has 1/z = conj(z) as a root too
    g = p.gcd(p.reverse())
    if g.degree < 1:
        return False
    g = self_reciprocal_part(g.squarefree_part())
    if g.degree < 1:
        return False
    if g.reverse().monic() != g:
        raise ArithmeticError(f"self-reciprocal part {g} is not palindromic")
    # z = +-1 were excluded above, so g is palindromic of even degree
    h = _to_trace_polynomial(g)
    return h.count_distinct_real_roots(Fraction(-2), Fraction(2)) > 0 or h(Fraction(-2)) == 0


def unit_circle_by_enclosures(p: Poly, max_halvings: int = 28) -> bool:
    """Enclosure oracle for :func:`unit_circle_root_test`.

    Refines (by factors of 2^8, down to 2^-256 by default) until every disk is
    strictly off the unit circle (answer ``False``); a disk that still meets the
    circle at the final precision counts as a unimodular root.
    """
    t = p.trailing_zeros()
    if t:
        p = Poly(p.coeffs[t:])
    if p.degree < 1:
        return False
    prec = DEFAULT_PRECISION
    for _ in range(max_halvings):
        encl = isolate_roots(p, prec)
        if all(e.off_unit_circle() for e in encl):
            return False
        if any(e.exact and e.center.abs2() == 1 for e in encl):
            return True
        prec /= 2**8
    return True
