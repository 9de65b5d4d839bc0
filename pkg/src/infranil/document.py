"""Input documents: JSON map descriptions, parsed into validated library objects.

A document looks like::

    {"dim": 2,
     "linearPart": [["2", 0], [0, 3]],
     "holonomy": [[[1, 0], [0, -1]]],
     "gammaPlusIndex": 1,
     "lieBrackets": [[0, 1, 2, "1"]],
     "fCohomology": [["1"], ["2", "3"], ["6"]],
     "fPlusCohomology": [{"charpoly": ["-1", "1"]}, ...],
     "options": {"maxK": 40, "precision": 32}}

Matrices are row-major, either nested or flat. Rationals are integers or
strings ``"p/q"``; floats are refused so nothing inexact sneaks in.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import CohomologySpectrum, LieAlgebraData
from .errors import ParseError
from .exactalg import Poly, RationalMatrix, format_rational, parse_rational
from .nielsen import HolonomyData, MapData

DEFAULT_MAX_K = 40
DEFAULT_PRECISION_BITS = 32

_KEYS = {"name", "description", "dim", "linearPart", "holonomy", "gammaPlusIndex", "lieBrackets",
         "fCohomology", "fPlusCohomology", "options"}
_OPTION_KEYS = {"maxK", "precision"}


@dataclass(frozen=True)
class InputDocument:
    map: MapData
    lie_algebra: LieAlgebraData | None = None
    max_k: int = DEFAULT_MAX_K
    precision_bits: int = DEFAULT_PRECISION_BITS
    name: str | None = None

    @property
    def precision(self) -> Fraction:
        return Fraction(1, 2 ** self.precision_bits)

    @property
    def dim(self) -> int:
        return self.map.dim


class _FloatLiteral(str):
    """JSON number with a fraction or exponent part, kept as text so errors carry a path."""


def _rational(x, path):
    if isinstance(x, _FloatLiteral):
        raise ParseError(f"floating point literal {x} is not exact; write it as \"p/q\"", path)
    try:
        return parse_rational(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed rational {x!r} ({exc})", path) from None


def _is_scalar(x):
    return isinstance(x, (int, str)) and not isinstance(x, bool)


def _matrix(value, dim, path) -> RationalMatrix:
    if not isinstance(value, list):
        raise ParseError("matrix must be an array", path)
    if all(_is_scalar(x) for x in value):
        if len(value) != dim * dim:
            raise ParseError(f"flat matrix needs {dim * dim} entries, got {len(value)}", path)
        rows = [value[i * dim:(i + 1) * dim] for i in range(dim)]
    elif all(isinstance(r, list) for r in value):
        if len(value) != dim or any(len(r) != dim for r in value):
            raise ParseError(f"matrix is not {dim}x{dim}", path)
        rows = value
    else:
        raise ParseError("matrix mixes rows and scalars", path)
    return RationalMatrix([[_rational(x, f"{path}[{i}][{j}]") for j, x in enumerate(r)]
                           for i, r in enumerate(rows)])


def _looks_like_single_matrix(value, dim):
    return (dim >= 2 and len(value) == dim
            and all(isinstance(r, list) and len(r) == dim and all(_is_scalar(x) for x in r)
                    for r in value))


def _holonomy(value, dim) -> HolonomyData:
    if value is None:
        return HolonomyData.trivial(dim)
    if not isinstance(value, list):
        raise ParseError("holonomy must be an array of matrices", "holonomy")
    if _looks_like_single_matrix(value, dim):
        value = [value]
    mats = [_matrix(m, dim, f"holonomy[{i}]") for i, m in enumerate(value)]
    try:
        return HolonomyData.from_matrices(mats, dim)
    except ValueError as exc:
        raise ParseError(str(exc), "holonomy") from None


def _cohomology(value, path, precision) -> CohomologySpectrum:
    if not isinstance(value, list) or not value:
        raise ParseError("cohomology data must be a non-empty array, one entry per degree", path)
    polys = []
    for i, entry in enumerate(value):
        where = f"{path}[{i}]"
        if isinstance(entry, dict):
            if set(entry) != {"charpoly"} or not isinstance(entry["charpoly"], list):
                raise ParseError("expected {\"charpoly\": [ascending coefficients]}", where)
            p = Poly([_rational(c, f"{where}.charpoly") for c in entry["charpoly"]])
            if p.is_zero():
                raise ParseError("zero characteristic polynomial", where)
            polys.append(p.monic())
        elif isinstance(entry, list):
            polys.append(Poly.from_roots([_rational(x, where) for x in entry]))
        else:
            raise ParseError("expected an eigenvalue list or a charpoly object", where)
    return CohomologySpectrum.from_char_polys(polys, precision)


def _positive_int(x, path):
    if not isinstance(x, int) or isinstance(x, bool) or x < 1:
        raise ParseError(f"expected a positive integer, got {x!r}", path)
    return x


def parse_data(data, name=None) -> InputDocument:
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object")
    extra = set(data) - _KEYS
    if extra:
        raise ParseError(f"unknown keys {sorted(extra)}")
    if "dim" not in data or "linearPart" not in data:
        raise ParseError("dim and linearPart are required")
    dim = _positive_int(data["dim"], "dim")
    D = _matrix(data["linearPart"], dim, "linearPart")

    opts = data.get("options") or {}
    if not isinstance(opts, dict) or set(opts) - _OPTION_KEYS:
        raise ParseError(f"options may only contain {sorted(_OPTION_KEYS)}", "options")
    max_k = _positive_int(opts.get("maxK", DEFAULT_MAX_K), "options.maxK")
    bits = _positive_int(opts.get("precision", DEFAULT_PRECISION_BITS), "options.precision")
    precision = Fraction(1, 2 ** bits)

    holonomy = _holonomy(data.get("holonomy"), dim)
    index = data.get("gammaPlusIndex", 1)
    if index not in (1, 2) or isinstance(index, bool):
        raise ParseError(f"gammaPlusIndex must be 1 or 2, got {index!r}", "gammaPlusIndex")

    lie = None
    if data.get("lieBrackets") is not None:
        raw = data["lieBrackets"]
        if not isinstance(raw, list) or any(not isinstance(t, list) or len(t) != 4 for t in raw):
            raise ParseError("lieBrackets must be a list of [i, j, k, value] entries", "lieBrackets")
        triplets = [(t[0], t[1], t[2], _rational(t[3], f"lieBrackets[{n}][3]"))
                    for n, t in enumerate(raw)]
        try:
            lie = LieAlgebraData.from_triplets(dim, triplets)
        except ValueError as exc:
            raise ParseError(str(exc), "lieBrackets") from None
        c = lie.brackets
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    if c[i][j][k] != -c[j][i][k]:
                        raise ParseError(f"antisymmetry fails for [x{i}, x{j}] in component {k}",
                                         "lieBrackets")

    fcoh = None
    if data.get("fCohomology") is not None:
        fcoh = _cohomology(data["fCohomology"], "fCohomology", precision)
    fplus = None
    if data.get("fPlusCohomology") is not None:
        fplus = _cohomology(data["fPlusCohomology"], "fPlusCohomology", precision)

    fmap = MapData(D, holonomy, index, fcoh, fplus, lie)
    return InputDocument(fmap, lie, max_k, bits, data.get("name", name))


def parse_input(source, name=None) -> InputDocument:
    """Parse ``bytes`` or ``str`` holding a JSON document."""
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8 ({exc})") from None
    try:
        data = json.loads(source, parse_float=_FloatLiteral)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_data(data, name)


def _matrix_strings(M: RationalMatrix):
    return [[format_rational(M[i, j]) for j in range(M.dim)] for i in range(M.dim)]


def _cohomology_strings(spec: CohomologySpectrum):
    return [{"charpoly": [format_rational(c) for c in p.coeffs]} for p in spec.char_polys]


def render_input(doc: InputDocument) -> dict:
    """Canonical JSON-ready form; parsing it again gives an equal document."""
    fmap = doc.map
    out = {
        "dim": doc.dim,
        "linearPart": _matrix_strings(fmap.linear_part),
        "holonomy": [_matrix_strings(A) for A in fmap.holonomy.elements[1:]],
        "gammaPlusIndex": fmap.gamma_plus_index,
        "options": {"maxK": doc.max_k, "precision": doc.precision_bits},
    }
    if doc.name is not None:
        out["name"] = doc.name
    if doc.lie_algebra is not None:
        out["lieBrackets"] = doc.lie_algebra.to_triplets()
    if fmap.f_cohomology is not None:
        out["fCohomology"] = _cohomology_strings(fmap.f_cohomology)
    if fmap.f_plus_cohomology is not None:
        out["fPlusCohomology"] = _cohomology_strings(fmap.f_plus_cohomology)
    return out
