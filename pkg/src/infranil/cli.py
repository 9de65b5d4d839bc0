"""Command line front end: ``infranil {classify,nielsen,zeta,hper,report} INPUT``.

Exit codes: 0 success, 2 parse error, 3 domain precondition, 4 certification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from .cohomology import cohomology_action, lefschetz_zeta, torus_cohomology
from .document import InputDocument, parse_input
from .errors import InfranilError, MissingLfPlus, NotHyperbolic, ParseError
from .exactalg import Poly, RationalFunction, format_rational, parse_rational
from .hper import hper_report
from .nielsen import (exponential_sum_form, fit_exponential_sum, nielsen_sequence,
                      nielsen_zeta_from_sum, nielsen_zeta_from_table, reidemeister_status,
                      semiconjugacy_warnings)
from .spectra import classify

COMMANDS = ("classify", "nielsen", "zeta", "hper", "report")
SUMMARY_COLUMNS = ("name", "dim", "hyperbolic", "nilpotent", "m0", "maxCertifiedK")


def _rf(r: RationalFunction | None):
    if r is None:
        return None
    return {"numerator": [format_rational(c) for c in r.numerator.coeffs],
            "denominator": [format_rational(c) for c in r.denominator.coeffs],
            "text": str(r)}


class _Run:
    """Shared state for one document so every stage computes things once."""

    def __init__(self, doc: InputDocument, max_k: int, precision, trace: bool):
        self.doc, self.fmap = doc, doc.map
        self.max_k, self.precision, self.trace = max_k, precision, trace
        self.diagnostics = {"integrality": "ok", "semiconjugacy": semiconjugacy_warnings(doc.map),
                            "notes": []}
        self._profile = self._sum = self._seq = None

    @property
    def profile(self):
        if self._profile is None:
            self._profile = classify(self.fmap.linear_part, self.precision)
        return self._profile

    def require_hyperbolic(self):
        if not self.profile.is_hyperbolic:
            raise NotHyperbolic("the linear part has an eigenvalue of modulus 1")

    @property
    def sequence(self):
        if self._seq is None:
            self._seq = nielsen_sequence(self.fmap, self.max_k)
        return self._seq

    @property
    def expsum(self):
        if self._sum is None:
            self.require_hyperbolic()
            if self.profile.is_nilpotent:
                self._sum = fit_exponential_sum(self.sequence, self.precision)
            else:
                self._sum = exponential_sum_form(self.fmap, self.precision, self.profile)
        return self._sum

    def lefschetz_spectra(self):
        """Cohomology data for ``f`` and ``f_+``: given, from the brackets, or the torus by default."""
        fmap = self.fmap
        spec = fmap.f_cohomology
        if spec is None and fmap.holonomy.is_trivial():
            if self.doc.lie_algebra is not None:
                spec = cohomology_action(self.doc.lie_algebra, fmap.linear_part, self.precision)
            else:
                spec = torus_cohomology(fmap.linear_part, self.precision)
        return spec, fmap.f_plus_cohomology

    def classify(self):
        return self.profile.to_dict()

    def nielsen(self):
        self.require_hyperbolic()
        return {
            "sequence": [[k, v] for k, v in enumerate(self.sequence, start=1)],
            "exponentialSum": self.expsum.to_dict(),
            "reidemeister": reidemeister_status(self.fmap).to_dict(),
        }

    def zeta(self, strict: bool):
        self.require_hyperbolic()
        from_sum = nielsen_zeta_from_sum(self.expsum)
        spec, plus = self.lefschetz_spectra()
        Lf = lefschetz_zeta(spec) if spec is not None else None
        Lplus = lefschetz_zeta(plus) if plus is not None else None
        table = None
        if Lf is None:
            self.diagnostics["notes"].append(
                "no cohomology data for a non-trivial holonomy group: table route skipped")
        else:
            try:
                table = nielsen_zeta_from_table(Lf, Lplus, self.profile.p, self.profile.n,
                                                self.fmap.gamma_plus_index)
            except MissingLfPlus as exc:
                if strict:
                    raise
                self.diagnostics["notes"].append(f"table route skipped: {exc}")
        agree = None if table is None else table == from_sum
        if agree is False:
            self.diagnostics["notes"].append("zeta routes disagree: check the cohomology data")
        return {"nielsenFromSum": _rf(from_sum), "lefschetz": _rf(Lf), "lefschetzPlus": _rf(Lplus),
                "nielsenFromTable": _rf(table), "routesAgree": agree}

    def hper(self):
        self.require_hyperbolic()
        s = None if self.profile.is_nilpotent else self.expsum
        rep = hper_report(self.fmap, self.max_k, self.profile, s)
        return rep.to_dict(with_derivation=self.trace)


def run(doc: InputDocument, command: str, max_k=None, precision_bits=None, trace=False) -> dict:
    """Execute one command; raises :class:`InfranilError` on failure."""
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    max_k = max_k or doc.max_k
    bits = precision_bits or doc.precision_bits
    r = _Run(doc, max_k, Fraction(1, 2 ** bits), trace)
    out = {"command": command, "dim": doc.dim, "maxK": max_k, "precision": bits}
    if doc.name is not None:
        out["name"] = doc.name
    if command in ("classify", "report"):
        out["spectral"] = r.classify()
    if command in ("nielsen", "report"):
        out["nielsen"] = r.nielsen()
    if command in ("zeta", "report"):
        out["zeta"] = r.zeta(strict=command == "zeta")
    if command in ("hper", "report"):
        out["hper"] = r.hper()
    out["diagnostics"] = r.diagnostics
    return out


def error_object(exc: InfranilError) -> dict:
    return {"error": {"type": type(exc).__name__, "message": str(exc), "hint": exc.hint,
                      "exitCode": exc.exit_code}}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _interval(iv):
    return "none" if iv is None else f"[{iv[0]}, {iv[1]}]"


def _poly_text(coeffs):
    return str(Poly([parse_rational(c) for c in coeffs]))


def render_text(report: dict) -> str:
    """Human-readable summary built from the same dictionary as the JSON output."""
    lines = []
    if "error" in report:
        e = report["error"]
        return f"error ({e['type']}, exit {e['exitCode']}): {e['message']}\nhint: {e['hint']}\n"
    title = report.get("name") or "map"
    lines.append(f"{title}: dim {report['dim']}, {report['command']}")
    sp = report.get("spectral")
    if sp:
        lines.append(f"  char poly: {_poly_text(sp['charPoly'])}")
        lines.append(f"  hyperbolic: {sp['hyperbolic']}  nilpotent: {sp['nilpotent']}  "
                     f"eigenvalue 1: {sp['eigenvalueOne']}  p = {sp['p']}  n = {sp['n']}")
        lines.append(f"  Sp(wedge D) in {_interval(sp['wedgeSpectralRadius'])}")
        lines.append(f"  N_inf(f) in {_interval(sp['asymptoticNielsen'])}")
    ni = report.get("nielsen")
    if ni:
        lines.append("  k  N(f^k)")
        for k, v in ni["sequence"]:
            lines.append(f"  {k}  {v}")
        es = ni["exponentialSum"]
        lines.append(f"  exponential sum, m = {es['m']}:")
        for b in es["blocks"]:
            lines.append(f"    coefficient {b['coefficient']} on the roots of {_poly_text(b['polynomial'])}")
        rd = ni["reidemeister"]
        lines.append(f"  R(f) finite: {rd['finite']}  R(f) = {rd['value']}")
    zt = report.get("zeta")
    if zt:
        for key in ("nielsenFromSum", "nielsenFromTable", "lefschetz", "lefschetzPlus"):
            if zt[key] is not None:
                lines.append(f"  {key}: {zt[key]['text']}")
        lines.append(f"  routes agree: {zt['routesAgree']}")
    hp = report.get("hper")
    if hp:
        lines.append(f"  mode: {hp['mode']}")
        lines.append(f"  certified periods <= {hp['maxK']}: {hp['certifiedPeriods']}")
        if hp["nilpotentConclusion"]:
            lines.append("  HPer(f) = {1}")
        if hp["cofiniteFrom"] is not None:
            lines.append(f"  [m0, inf) in HPer(f) with m0 = {hp['cofiniteFrom']}")
            lines.append(f"  unknown below m0: {hp['unknownPeriods']}")
        tr = hp["trace"]
        if tr:
            for key in ("lambda1Lower", "m", "mu", "epsilon", "k0", "l0", "tauLower", "nu",
                        "k0prime", "m0"):
                lines.append(f"    {key} = {tr[key]}")
            for step in tr.get("derivation", []):
                lines.append(f"    | {step}")
    dg = report.get("diagnostics") or {}
    for w in dg.get("semiconjugacy", []):
        lines.append(f"  warning: {w}")
    for note in dg.get("notes", []):
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


def _load(path: str):
    if path == "-":
        return parse_input(sys.stdin.buffer.read(), None)
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_input(data, p.stem)


def process(path: str, command: str, args) -> tuple[dict, int]:
    try:
        doc = _load(path)
        return run(doc, command, args.max_k, args.precision, args.trace), 0
    except InfranilError as exc:
        return error_object(exc), exc.exit_code


def _emit(report: dict, as_json: bool, out=None):
    out = out or sys.stdout
    if not as_json:
        out.write(render_text(report))
        out.write("--- json ---\n")
    out.write(dumps(report))


def _summary_row(name, report):
    row = dict.fromkeys(SUMMARY_COLUMNS, "")
    row["name"] = name
    row["dim"] = report.get("dim", "")
    sp = report.get("spectral")
    if sp:
        row["hyperbolic"], row["nilpotent"] = sp["hyperbolic"], sp["nilpotent"]
    hp = report.get("hper")
    if hp:
        row["m0"] = "" if hp["cofiniteFrom"] is None else hp["cofiniteFrom"]
        row["maxCertifiedK"] = max(hp["certifiedPeriods"], default="")
    return row


def batch(directory: str, command: str, args) -> int:
    src = Path(directory)
    out = Path(args.out) if args.out else src / "reports"
    out.mkdir(parents=True, exist_ok=True)
    worst, rows = 0, []
    for path in sorted(src.glob("*.json")):
        report, code = process(str(path), command, args)
        if code:
            sys.stderr.write(f"{path.name}: {report['error']['type']}: {report['error']['message']}\n")
            report.setdefault("dim", None)
        (out / f"{path.stem}.report.json").write_text(dumps(report))
        rows.append(_summary_row(path.stem, report))
        worst = max(worst, code)
    with open(out / "summary.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return worst


def build_parser():
    ap = argparse.ArgumentParser(prog="infranil",
                                 description="Nielsen numbers, zeta functions and homotopy minimal "
                                             "periods of affine maps on infra-nilmanifolds.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", nargs="?", default="-", help="JSON document, or - for stdin")
    ap.add_argument("--max-k", type=int, default=None,
                    help="sequence length for period certification (default 40)")
    ap.add_argument("--precision", type=int, default=None,
                    help="initial enclosure radius 2^-P (default 32)")
    ap.add_argument("--json", action="store_true", help="machine-readable output only")
    ap.add_argument("--trace", action="store_true", help="include the m0 derivation steps")
    ap.add_argument("--batch", metavar="DIR", help="process every *.json file in DIR")
    ap.add_argument("--out", metavar="DIR", help="output directory for --batch (default DIR/reports)")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_intermixed_args(argv)
    for flag in ("max_k", "precision"):
        v = getattr(args, flag)
        if v is not None and v < 1:
            ap.error(f"--{flag.replace('_', '-')} must be positive")
    if args.batch:
        return batch(args.batch, args.command, args)
    report, code = process(args.input, args.command, args)
    if code:
        sys.stderr.write(f"{report['error']['type']}: {report['error']['message']}\n")
    _emit(report, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
