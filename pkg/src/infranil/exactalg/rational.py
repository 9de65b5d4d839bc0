"""Rational scalars, complex rationals and certified square roots.

Rationals are :class:`fractions.Fraction`; they are always reduced with a
positive denominator, which is all the invariant we need.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(value) -> Fraction:
    """Parse an int or a ``"p/q"`` / ``"p"`` string. Floats and bools are refused."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if not isinstance(value, str):
        raise ValueError(f"not a rational: {value!r}")
    m = _RATIONAL_RE.match(value)
    if not m:
        raise ValueError(f"malformed rational {value!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {value!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sqrt_bounds(q: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(q) <= hi`` with ``hi - lo <= 2**-bits`` (exact when q is a square)."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0), Fraction(0)
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        r = Fraction(rn, rd)
        return r, r
    scale = 1 << bits
    # floor(sqrt(q) * scale) = isqrt(floor(q * scale^2))
    s = isqrt(q.numerator * scale * scale // q.denominator)
    return Fraction(s, scale), Fraction(s + 1, scale)


def floor_dyadic(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction((q.numerator * scale) // q.denominator, scale)


def ceil_dyadic(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(-((-q.numerator * scale) // q.denominator), scale)


@dataclass(frozen=True)
class QComplex:
    """Complex number with rational real and imaginary parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other):
        other = _as_qc(other)
        return QComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_qc(other)
        return QComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_qc(other) - self

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __mul__(self, other):
        other = _as_qc(other)
        return QComplex(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_qc(other)
        n = other.abs2()
        if n == 0:
            raise ZeroDivisionError("complex division by zero")
        return QComplex((self.re * other.re + self.im * other.im) / n,
                        (self.im * other.re - self.re * other.im) / n)

    def conjugate(self):
        return QComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def abs_bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        if self.im == 0:
            a = abs(self.re)
            return a, a
        if self.re == 0:
            a = abs(self.im)
            return a, a
        return sqrt_bounds(self.abs2(), bits)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0


def _as_qc(x) -> QComplex:
    if isinstance(x, QComplex):
        return x
    return QComplex(Fraction(x), Fraction(0))
