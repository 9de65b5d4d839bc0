"""Exact rational linear algebra and polynomial primitives."""

from .interval import Interval
from .matrix import RationalMatrix, char_poly, det, exterior_power
from .poly import Poly, RationalFunction, exp_series
from .rational import QComplex, Rational, format_rational, parse_rational, sqrt_bounds
from .recurrence import RecurrenceFit, berlekamp_massey, find_recurrence
from .roots import (DEFAULT_PRECISION, RootEnclosure, isolate_roots, unit_circle_by_enclosures,
                    unit_circle_root_test)

__all__ = [
    "DEFAULT_PRECISION", "Interval", "Poly", "QComplex", "Rational", "RationalFunction",
    "RationalMatrix", "RecurrenceFit", "RootEnclosure", "berlekamp_massey", "char_poly", "det",
    "exp_series", "exterior_power", "find_recurrence", "format_rational", "isolate_roots",
    "parse_rational", "sqrt_bounds", "unit_circle_by_enclosures", "unit_circle_root_test",
]
