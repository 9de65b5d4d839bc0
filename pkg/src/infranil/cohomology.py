"""Chevalley-Eilenberg cohomology of nilpotent Lie algebras and Lefschetz data of maps.

Cochains of degree ``p`` are expanded in the basis ``e^I`` of the dual exterior
power, ``I`` running over lexicographic ``p``-subsets of ``range(dim)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import LieAlgebraError, NotEndomorphism
from .exactalg import (DEFAULT_PRECISION, Poly, RationalFunction, RationalMatrix, char_poly,
                       exterior_power, format_rational, isolate_roots, parse_rational)
from .exactalg.linalg import independent_subset, nullspace, solve_in_basis


@dataclass(frozen=True)
class LieAlgebraData:
    """Structure constants ``c[i][j][k]`` with ``[x_i, x_j] = sum_k c[i][j][k] x_k``."""

    dim: int
    brackets: tuple

    @classmethod
    def abelian(cls, dim: int):
        zero = tuple(tuple(tuple(Fraction(0) for _ in range(dim)) for _ in range(dim)) for _ in range(dim))
        return cls(dim, zero)

    @classmethod
    def from_triplets(cls, dim: int, triplets, complete: bool = True):
        """Build from sparse ``(i, j, k, value)`` entries.

        With ``complete`` the entry ``(j, i, k)`` defaults to ``-value``; an
        explicit entry for both orders is kept as given (and validated later).
        """
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        given = set()
        for t in triplets:
            i, j, k, v = t
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j, k)):
                raise ValueError(f"bracket indices must be integers: {t!r}")
            if not all(0 <= x < dim for x in (i, j, k)):
                raise ValueError(f"bracket index out of range in {t!r}")
            c[i][j][k] = parse_rational(v)
            given.add((i, j, k))
        if complete:
            for (i, j, k) in list(given):
                if (j, i, k) not in given:
                    c[j][i][k] = -c[i][j][k]
        return cls(dim, tuple(tuple(tuple(row) for row in plane) for plane in c))

    @classmethod
    def heisenberg(cls):
        return cls.from_triplets(3, [(0, 1, 2, 1)])

    def to_triplets(self):
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    if self.brackets[i][j][k]:
                        out.append([i, j, k, format_rational(self.brackets[i][j][k])])
        return out

    def bracket(self, u, v):
        n = self.dim
        out = [Fraction(0)] * n
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                if v[j] == 0:
                    continue
                s = u[i] * v[j]
                for k in range(n):
                    c = self.brackets[i][j][k]
                    if c:
                        out[k] += s * c
        return out

    def is_abelian(self) -> bool:
        return all(x == 0 for plane in self.brackets for row in plane for x in row)


def _basis(n, i):
    return [Fraction(int(k == i)) for k in range(n)]


def lie_algebra_violation(L: LieAlgebraData) -> str | None:
    """Description of the first violated identity, or ``None`` for a nilpotent Lie algebra."""
    n, c = L.dim, L.brackets
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if c[i][j][k] != -c[j][i][k]:
                    return (f"antisymmetry fails: c[{i}][{j}][{k}] = {format_rational(c[i][j][k])}"
                            f" but c[{j}][{i}][{k}] = {format_rational(c[j][i][k])}")
    e = [_basis(n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a = L.bracket(e[i], L.bracket(e[j], e[k]))
                b = L.bracket(e[j], L.bracket(e[k], e[i]))
                d = L.bracket(e[k], L.bracket(e[i], e[j]))
                if any(x + y + z != 0 for x, y, z in zip(a, b, d)):
                    return f"Jacobi identity fails for (x{i}, x{j}, x{k})"
    # lower central series g_1 = g, g_{s+1} = [g, g_s]
    span = e
    while span:
        nxt = [L.bracket(x, y) for x in e for y in span]
        nxt = independent_subset([v for v in nxt if any(v)])
        if len(nxt) >= len(span):
            return f"not nilpotent: lower central series stabilises at dimension {len(span)}"
        span = nxt
    return None


def validate_lie_algebra(L: LieAlgebraData) -> bool:
    return lie_algebra_violation(L) is None


def endomorphism_violation(L: LieAlgebraData, D: RationalMatrix):
    """First basis pair ``(i, j)`` with ``D[x_i, x_j] != [D x_i, D x_j]``, else ``None``."""
    n = L.dim
    cols = [[D[r, j] for r in range(n)] for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = D.apply(L.brackets[i][j])
            rhs = L.bracket(cols[i], cols[j])
            if list(lhs) != list(rhs):
                return i, j
    return None


def ce_differential(L: LieAlgebraData, p: int):
    """Matrix (list of rows) of ``d: Hom(wedge^p g, R) -> Hom(wedge^{p+1} g, R)``.

    ``(d w)(x_0..x_p) = sum_{a<b} (-1)^{a+b} w([x_a, x_b], x_0..^a..^b..x_p)``.
    """
    n = L.dim
    src = list(combinations(range(n), p))
    dst = list(combinations(range(n), p + 1))
    index = {I: col for col, I in enumerate(src)}
    rows = []
    for J in dst:
        row = [Fraction(0)] * len(src)
        for a in range(len(J)):
            for b in range(a + 1, len(J)):
                rest = J[:a] + J[a + 1:b] + J[b + 1:]
                sign = -1 if (a + b) % 2 else 1
                for k, c in enumerate(L.brackets[J[a]][J[b]]):
                    if c == 0 or k in rest:
                        continue
                    pos = sum(1 for r in rest if r < k)
                    I = tuple(sorted(rest + (k,)))
                    row[index[I]] += sign * (-1 if pos % 2 else 1) * c
        rows.append(row)
    return rows


def cochain_map(D: RationalMatrix, p: int) -> RationalMatrix:
    """Pull-back ``w -> w(D., ..., D.)`` on degree-``p`` cochains: the transpose of the compound matrix."""
    return exterior_power(D, p).transpose()


@dataclass(frozen=True)
class CohomologySpectrum:
    """Betti numbers and, per degree, the characteristic polynomial of the induced map."""

    betti: tuple[int, ...]
    char_polys: tuple[Poly, ...]
    eigenvalues: tuple = ()

    @classmethod
    def from_char_polys(cls, polys, precision=DEFAULT_PRECISION):
        polys = tuple(p.monic() for p in polys)
        return cls(tuple(p.degree for p in polys), polys,
                   tuple(tuple(isolate_roots(p, precision)) for p in polys))

    @classmethod
    def from_eigenvalues(cls, per_degree, precision=DEFAULT_PRECISION):
        return cls.from_char_polys([Poly.from_roots(ev) for ev in per_degree], precision)

    @property
    def top_degree(self) -> int:
        return len(self.betti) - 1

    def to_dict(self):
        return {
            "betti": list(self.betti),
            "charPolys": [[format_rational(c) for c in p.coeffs] for p in self.char_polys],
            "eigenvalues": [[e.to_dict() for e in per] for per in self.eigenvalues],
        }


def cohomology_action(L: LieAlgebraData, D: RationalMatrix,
                      precision=DEFAULT_PRECISION) -> CohomologySpectrum:
    """Betti numbers and induced action of ``D`` on ``H^*(g)``."""
    why = lie_algebra_violation(L)
    if why:
        raise LieAlgebraError(why)
    if D.dim != L.dim:
        raise ValueError("dimension mismatch between Lie algebra and linear part")
    bad = endomorphism_violation(L, D)
    if bad is not None:
        raise NotEndomorphism(f"D[x{bad[0]}, x{bad[1]}] != [D x{bad[0]}, D x{bad[1]}]")
    n = L.dim
    diffs = [ce_differential(L, p) for p in range(n)]
    polys = []
    for p in range(n + 1):
        size = len(list(combinations(range(n), p)))
        cycles = nullspace(diffs[p], size) if p < n else [_basis(size, i) for i in range(size)]
        if p == 0:
            boundaries = []
        else:
            prev = diffs[p - 1]
            boundaries = independent_subset([[r[j] for r in prev] for j in range(len(prev[0]))])
        classes = independent_subset(cycles, boundaries)
        M = cochain_map(D, p)
        basis = classes + boundaries
        if classes:
            induced = []
            for v in classes:
                coords = solve_in_basis(basis, M.apply(v))
                induced.append(coords[:len(classes)])
            # columns are the images of the classes
            polys.append(char_poly(RationalMatrix(list(zip(*induced)))))
        else:
            polys.append(Poly((1,)))
    return CohomologySpectrum.from_char_polys(polys, precision)


def torus_cohomology(D: RationalMatrix, precision=DEFAULT_PRECISION) -> CohomologySpectrum:
    return cohomology_action(LieAlgebraData.abelian(D.dim), D, precision)


def lefschetz_numbers(spec: CohomologySpectrum, K: int):
    """``L(f^k) = sum_i (-1)^i tr((f^i)^k)`` for ``k = 1..K``, exactly (Newton's identities)."""
    if K < 1:
        raise ValueError("K must be at least 1")
    out = [Fraction(0)] * K
    for i, p in enumerate(spec.char_polys):
        if p.degree < 1:
            continue
        sign = -1 if i % 2 else 1
        for k, s in enumerate(p.power_sums(K)):
            out[k] += sign * s
    return out


def lefschetz_zeta(spec: CohomologySpectrum) -> RationalFunction:
    """``prod_i det(I - z f^i)^((-1)^(i+1))`` as a reduced rational function."""
    num, den = Poly((1,)), Poly((1,))
    for i, p in enumerate(spec.char_polys):
        factor = p.reverse(p.degree) if p.degree >= 0 else Poly((1,))
        if i % 2:
            num = num * factor
        else:
            den = den * factor
    return RationalFunction(num, den)


__all__ = [
    "CohomologySpectrum", "LieAlgebraData", "ce_differential", "cochain_map", "cohomology_action",
    "endomorphism_violation", "lefschetz_numbers", "lefschetz_zeta", "lie_algebra_violation",
    "torus_cohomology", "validate_lie_algebra",
]
