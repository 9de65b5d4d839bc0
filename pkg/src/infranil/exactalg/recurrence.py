"""Minimal linear recurrences over the rationals (Berlekamp-Massey)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ValidationFailed
from .poly import Poly

HOLDOUT = 8


@dataclass(frozen=True)
class RecurrenceFit:
    """``s_n = -(c_1 s_{n-1} + ... + c_L s_{n-L})`` with ``z^L + c_1 z^{L-1} + ... + c_L`` = polynomial."""

    order: int
    polynomial: Poly
    training_length: int
    validated: bool

    def predict(self, history) -> Fraction:
        L = self.order
        c = self.polynomial
        # polynomial[L - i] is c_i
        return -sum((c[L - i] * Fraction(history[-i]) for i in range(1, L + 1)), Fraction(0))

    def extend(self, seq, count: int):
        out = [Fraction(x) for x in seq]
        for _ in range(count):
            out.append(self.predict(out))
        return out

    def reproduces(self, seq, start: int = 0) -> bool:
        seq = [Fraction(x) for x in seq]
        for n in range(max(start, self.order), len(seq)):
            if self.predict(seq[:n]) != seq[n]:
                return False
        return True


def berlekamp_massey(seq):
    """Connection polynomial ``C`` (``C[0] = 1``) and linear complexity ``L`` of ``seq``."""
    s = [Fraction(x) for x in seq]
    C, B = [Fraction(1)], [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(s)):
        d = s[n]
        for i in range(1, L + 1):
            d += C[i] * s[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / b
        T = list(C)
        need = len(B) + m
        if len(C) < need:
            C.extend([Fraction(0)] * (need - len(C)))
        for i, bi in enumerate(B):
            C[i + m] -= coef * bi
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    C = (C + [Fraction(0)] * (L + 1))[:L + 1]
    return C, L


def find_recurrence(seq, holdout: int = HOLDOUT) -> RecurrenceFit:
    """Fit the minimal recurrence on all but the last ``holdout`` terms and check it on those.

    Sequences no longer than ``holdout`` are fitted whole and reported unvalidated.
    Raises :class:`ValidationFailed` when the held-out terms break the fit or the
    training prefix is too short to pin the recurrence down (``2L > training length``).
    """
    seq = [Fraction(x) for x in seq]
    if not seq:
        raise ValueError("empty sequence")
    if len(seq) <= holdout:
        train, validate = seq, False
    else:
        train, validate = seq[:-holdout], True
    C, L = berlekamp_massey(train)
    poly = Poly(reversed(C))
    fit = RecurrenceFit(L, poly, len(train), validate)
    if validate:
        if 2 * L > len(train):
            raise ValidationFailed(
                f"recurrence order {L} is not determined by {len(train)} training terms")
        if not fit.reproduces(seq, start=len(train)):
            raise ValidationFailed(
                f"order-{L} recurrence fitted on {len(train)} terms fails on the held-out suffix")
    return fit
