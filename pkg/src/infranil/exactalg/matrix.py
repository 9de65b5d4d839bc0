"""Dense square matrices over the rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import lcm

from .poly import Poly
from .rational import format_rational, parse_rational


class RationalMatrix:
    """Immutable, hashable square matrix of :class:`Fraction` entries."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix dimension must be at least 1")
        if any(len(r) != n for r in rows):
            raise ValueError("matrix is not square")
        self.rows = rows
        self._hash = None

    @classmethod
    def identity(cls, n: int):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int):
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def diag(cls, *entries):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_flat(cls, values, dim: int):
        values = list(values)
        if len(values) != dim * dim:
            raise ValueError(f"expected {dim * dim} entries, got {len(values)}")
        return cls([[parse_rational(values[i * dim + j]) for j in range(dim)] for i in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return "RationalMatrix([" + ", ".join(
            "[" + ", ".join(format_rational(x) for x in r) + "]" for r in self.rows) + "])"

    def to_strings(self):
        return [[format_rational(x) for x in r] for r in self.rows]

    def __add__(self, other):
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return RationalMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c):
        c = Fraction(c)
        return RationalMatrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other):
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows))
        return RationalMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
                               for r in self.rows])

    def apply(self, vec):
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.rows)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = RationalMatrix.identity(self.dim), self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def transpose(self):
        return RationalMatrix(zip(*self.rows))

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.dim)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def det(self) -> Fraction:
        return det(self)

    def char_poly(self) -> Poly:
        return char_poly(self)

    def inverse(self):
        n = self.dim
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return RationalMatrix([r[n:] for r in aug])


def _bareiss(m):
    """Fraction-free determinant of an integer matrix given as a list of lists (consumed)."""
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def det(M: RationalMatrix) -> Fraction:
    """Exact determinant: rows are cleared of denominators, then Bareiss elimination."""
    scale = 1
    ints = []
    for r in M.rows:
        d = reduce(lcm, (x.denominator for x in r), 1)
        scale *= d
        ints.append([int(x * d) for x in r])
    return Fraction(_bareiss(ints), scale)


def char_poly(M: RationalMatrix) -> Poly:
    """Monic ``det(zI - M)`` by the Faddeev-LeVerrier recursion."""
    n = M.dim
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = RationalMatrix.zero(n)
    ident = RationalMatrix.identity(n)
    for k in range(1, n + 1):
        Mk = M @ (Mk + ident.scale(coeffs[n - k + 1]))
        coeffs[n - k] = -Mk.trace() / k
    return Poly(coeffs)


def exterior_power(M: RationalMatrix, i: int) -> RationalMatrix:
    """``i``-th compound matrix; rows and columns indexed by lexicographic ``i``-subsets."""
    n = M.dim
    if not 0 <= i <= n:
        raise ValueError(f"exterior power order {i} out of range 0..{n}")
    if i == 0:
        return RationalMatrix([[1]])
    subsets = list(combinations(range(n), i))
    return RationalMatrix([
        [det(RationalMatrix([[M.rows[r][c] for c in cs] for r in rs]))
         for cs in subsets]
        for rs in subsets
    ])
