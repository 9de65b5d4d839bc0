from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rational import format_rational


@dataclass(frozen=True)
class Interval:
    """Closed rational interval ``[lo, hi]``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x):
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __mul__(self, other: "Interval") -> "Interval":
        ps = [self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi]
        return Interval(min(ps), max(ps))

    def hull_max(self, x) -> "Interval":
        """Interval for ``max(x, value)``."""
        return Interval(max(self.lo, x), max(self.hi, x))

    def to_strings(self):
        return [format_rational(self.lo), format_rational(self.hi)]

    def __str__(self):
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"
