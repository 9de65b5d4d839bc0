"""Dense univariate polynomials and rational functions over the rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .rational import QComplex, format_rational


class Poly:
    """Polynomial with rational coefficients, stored in ascending degree.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def z(cls):
        return cls((0, 1))

    @classmethod
    def constant(cls, a):
        return cls((a,))

    @classmethod
    def from_roots(cls, roots):
        p = cls((1,))
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __repr__(self):
        return f"Poly({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        return self.to_string()

    def to_string(self, ascending: bool = False) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        order = range(self.degree + 1) if ascending else range(self.degree, -1, -1)
        for i in order:
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = format_rational(mag)
            else:
                mono = "z" if i == 1 else f"z^{i}"
                body = mono if mag == 1 else f"{format_rational(mag)}{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    # arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if self.degree < dq:
            return Poly(), self
        quot = [Fraction(0)] * (self.degree - dq + 1)
        inv = 1 / other.lc
        for i in range(self.degree - dq, -1, -1):
            c = rem[i + dq] * inv
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other) -> bool:
        return not (other % self)

    def __call__(self, x):
        if isinstance(x, QComplex):
            acc = QComplex(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = Fraction(0) if not isinstance(x, Poly) else Poly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # structure --------------------------------------------------------

    def deriv(self):
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self):
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def primitive(self):
        """Integer polynomial with coprime coefficients and positive leading term."""
        if self.is_zero():
            return self
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return Poly(Fraction(x, g) for x in ints)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def reverse(self, degree: int | None = None):
        """``z^d p(1/z)``; with the default ``d = deg p`` this is the reciprocal polynomial."""
        d = self.degree if degree is None else degree
        if self.degree > d:
            raise ValueError("reverse degree smaller than polynomial degree")
        c = list(self.coeffs) + [Fraction(0)] * (d + 1 - len(self.coeffs))
        return Poly(reversed(c))

    def reflect(self):
        """``p(-z)``."""
        return Poly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def trailing_zeros(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def gcd(self, other):
        """Monic gcd (zero if both are zero)."""
        a, b = self, self._coerce(other)
        while b:
            a, b = b, (a % b).primitive()
        return a.monic()

    def squarefree_decomposition(self):
        """Yun's algorithm: list of ``(factor, multiplicity)`` with monic coprime square-free factors."""
        if self.degree < 1:
            return []
        f = self.monic()
        out = []
        df = f.deriv()
        a = f.gcd(df)
        b = f.exact_div(a)
        c = df.exact_div(a)
        d = c - b.deriv()
        i = 1
        while b.degree > 0:
            a = b.gcd(d)
            b = b.exact_div(a)
            c = d.exact_div(a)
            if a.degree > 0:
                out.append((a.monic(), i))
            d = c - b.deriv()
            i += 1
        return out

    def squarefree_part(self):
        if self.degree < 1:
            return Poly((1,))
        return self.exact_div(self.gcd(self.deriv())).monic()

    def power_sums(self, count: int):
        """Power sums ``p_1..p_count`` of the roots (with multiplicity), via Newton's identities."""
        n = self.degree
        if n < 1:
            return [Fraction(0)] * count
        m = self.monic()
        # e-coefficients: z^n + c_{n-1} z^{n-1} + ... ; Newton: p_k + c_{n-1} p_{k-1} + ... + k c_{n-k} = 0
        a = [m[n - j] for j in range(n + 1)]  # a[0] = 1, a[j] = coeff of z^{n-j}
        p = []
        for k in range(1, count + 1):
            s = k * a[k] if k <= n else Fraction(0)
            for j in range(1, min(k - 1, n) + 1):
                s += a[j] * p[k - j - 1]
            p.append(-s)
        return p

    # real roots -------------------------------------------------------

    def sturm_sequence(self):
        f = self.squarefree_part()
        seq = [f, f.deriv()]
        while seq[-1]:
            r = seq[-2] % seq[-1]
            seq.append(-r)
        return seq[:-1]

    @staticmethod
    def _sign_changes(values):
        signs = [v for v in values if v != 0]
        return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))

    @staticmethod
    def _sturm_at(seq, x):
        if x == float("inf"):
            return Poly._sign_changes([s.lc for s in seq])
        if x == float("-inf"):
            return Poly._sign_changes([s.lc if s.degree % 2 == 0 else -s.lc for s in seq])
        return Poly._sign_changes([s(x) for s in seq])

    def count_distinct_real_roots(self, lo=float("-inf"), hi=float("inf")) -> int:
        """Distinct real roots in the half-open interval ``(lo, hi]``."""
        if self.degree < 1:
            return 0
        seq = self.sturm_sequence()
        return Poly._sturm_at(seq, lo) - Poly._sturm_at(seq, hi)

    def count_real_roots(self, lo=float("-inf"), hi=float("inf")) -> int:
        """Real roots in ``(lo, hi]`` counted with multiplicity."""
        return sum(m * f.count_distinct_real_roots(lo, hi) for f, m in self.squarefree_decomposition())


def poly_lcm_denominator(p: Poly) -> int:
    return reduce(lcm, (c.denominator for c in p.coeffs), 1)


class RationalFunction:
    """Reduced quotient ``numerator / denominator`` with ``denominator(0) = 1``."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=None):
        num = numerator if isinstance(numerator, Poly) else Poly(numerator)
        den = Poly((1,)) if denominator is None else (
            denominator if isinstance(denominator, Poly) else Poly(denominator))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den) if num else den.monic()
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        c0 = den[0]
        if c0 == 0:
            raise ValueError("rational function has a pole at z = 0")
        self.numerator = num * (1 / c0)
        self.denominator = den * (1 / c0)

    @classmethod
    def one(cls):
        return cls(Poly((1,)))

    def __eq__(self, other):
        return (isinstance(other, RationalFunction)
                and self.numerator == other.numerator
                and self.denominator == other.denominator)

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __mul__(self, other):
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    def __truediv__(self, other):
        return RationalFunction(self.numerator * other.denominator, self.denominator * other.numerator)

    def inverse(self):
        return RationalFunction(self.denominator, self.numerator)

    def __pow__(self, e: int):
        if e < 0:
            return RationalFunction(self.denominator ** (-e), self.numerator ** (-e))
        return RationalFunction(self.numerator ** e, self.denominator ** e)

    def reflect(self):
        """``R(-z)``."""
        return RationalFunction(self.numerator.reflect(), self.denominator.reflect())

    def value_at_zero(self) -> Fraction:
        return self.numerator[0]

    def series(self, order: int):
        """Taylor coefficients ``c_0..c_order``."""
        out = []
        for n in range(order + 1):
            s = self.numerator[n]
            for j in range(1, min(n, self.denominator.degree) + 1):
                s -= self.denominator[j] * out[n - j]
            out.append(s)
        return out

    def log_derivative_coefficients(self, order: int):
        """Coefficients ``c_1..c_order`` of ``z R'(z) / R(z)``.

        For a zeta function ``exp(sum X_k z^k / k)`` these are exactly the ``X_k``.
        """
        zero = [Fraction(0)] * order
        # N(z) = c * prod(1 - a z): roots of the reversed numerator are the a's
        pn = self.numerator.reverse().power_sums(order) if self.numerator.degree > 0 else zero
        pd = self.denominator.reverse().power_sums(order) if self.denominator.degree > 0 else zero
        return [pd[k] - pn[k] for k in range(order)]

    def __repr__(self):
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"

    def __str__(self):
        num = self.numerator.to_string(ascending=True)
        den = self.denominator.to_string(ascending=True)
        if self.denominator.degree == 0:
            return num
        return f"({num}) / ({den})"


def exp_series(log_coeffs, order: int):
    """Coefficients of ``exp(sum_{k>=1} X_k z^k / k)`` up to ``z^order``; ``log_coeffs[k-1] = X_k``."""
    e = [Fraction(1)]
    for n in range(1, order + 1):
        s = Fraction(0)
        for k in range(1, n + 1):
            s += Fraction(log_coeffs[k - 1]) * e[n - k]
        e.append(s / n)
    return e
