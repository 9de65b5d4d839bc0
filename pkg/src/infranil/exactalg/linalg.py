"""Rectangular exact linear algebra on lists of Fraction rows."""

from __future__ import annotations

from fractions import Fraction


def rref(rows):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int):
    """Basis (list of column vectors) of ``{x : A x = 0}`` for the ``len(rows) x ncols`` matrix A."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def columns(rows, ncols: int):
    return [[r[j] for r in rows] for j in range(ncols)]


def independent_subset(vectors, start=()):
    """Greedy: vectors from ``vectors`` that are independent modulo ``start`` (and each other)."""
    chosen = []
    current = [list(v) for v in start]
    base_rank = rank(current) if current else 0
    for v in vectors:
        trial = current + [list(v)]
        r = rank(trial)
        if r > base_rank:
            chosen.append(list(v))
            current = trial
            base_rank = r
    return chosen


def solve_in_basis(basis, target):
    """Coefficients ``x`` with ``sum x_j basis[j] = target``; ``basis`` must be independent."""
    n = len(target)
    k = len(basis)
    aug = [[basis[j][i] for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    red, pivots = rref(aug)
    if k in pivots:
        raise ArithmeticError("target is not in the span of the basis")
    x = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        x[pc] = row[k]
    return x
