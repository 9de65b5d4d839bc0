"""Homotopy minimal periods: ABLSS certificates and the explicit cofinite bound ``m0``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import primefactors

from .errors import (ConsistencyError, InsufficientSequence, LemmaViolation, NilpotentInput,
                     NotHyperbolic, NotNilpotent)
from .exactalg import format_rational
from .exactalg.rational import ceil_dyadic, floor_dyadic
from .nielsen import (ExponentialSum, MapData, _assemble, exponential_sum_form, nielsen_number,
                      nielsen_sequence)
from .spectra import SpectralProfile, classify, wedge_spectral_radius

TAU_RESOLUTION = Fraction(1, 2 ** 20)
_RATIO_BITS = 64
_MAX_SCAN = 100_000
_MAX_REFINE = 256


def ablss_certify(seq, k: int) -> bool:
    """``N(f^k) > sum_{p prime, p | k} N(f^(k/p))``; ``seq[j]`` holds ``N(f^(j+1))``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if len(seq) < k:
        raise InsufficientSequence(f"need N(f^1)..N(f^{k}), got {len(seq)} terms")
    return seq[k - 1] > sum(seq[k // p - 1] for p in primefactors(k))


@dataclass(frozen=True)
class HPerBoundTrace:
    lambda1_lower: Fraction
    m: int
    mu: Fraction
    epsilon: Fraction
    k0: int
    l0: int
    tau_lower: Fraction | None
    nu: Fraction
    k0prime: int
    m0: int
    derivation: tuple[str, ...] = ()

    def to_dict(self, with_derivation: bool = False):
        d = {
            "lambda1Lower": format_rational(self.lambda1_lower),
            "m": self.m,
            "mu": format_rational(self.mu),
            "epsilon": format_rational(self.epsilon),
            "k0": self.k0,
            "l0": self.l0,
            "tauLower": None if self.tau_lower is None else format_rational(self.tau_lower),
            "nu": format_rational(self.nu),
            "k0prime": self.k0prime,
            "m0": self.m0,
        }
        if with_derivation:
            d["derivation"] = list(self.derivation)
        return d


def _root_lower_bound(r: Fraction, e: int, resolution=TAU_RESOLUTION) -> Fraction:
    """Rational ``q > 1`` with ``q^e < r`` within ``resolution`` of ``r^(1/e)`` (needs ``r > 1``)."""
    lo, hi = Fraction(1), Fraction(r)
    while hi - lo > resolution or lo == 1:
        mid = (lo + hi) / 2
        if mid ** e < r:
            lo = mid
        else:
            hi = mid
    return lo


def _least_k0prime(nu: Fraction) -> int:
    """Least ``k`` with ``nu^(2^(j-1)) > j`` for every ``j >= k``.

    Once the inequality holds at some ``j >= 2`` squaring keeps it (``j^2 >= j + 1``),
    so only ``k = 1`` needs the extra check at ``j = 2``. Powers are bounded below
    by dyadic rounding once they grow large.
    """
    def lower_powers():
        x = nu
        while True:
            yield x
            x = x * x
            if x.denominator.bit_length() > 2048:
                x = floor_dyadic(x, 256)

    powers = lower_powers()
    first = next(powers)
    second = next(powers)
    if first > 1 and second > 2:
        return 1
    k, x = 2, second
    while not x > k:
        k += 1
        x = next(powers)
        if k > _MAX_SCAN:
            raise LemmaViolation("nu is too close to 1 to find k0'")
    return k


def _separated(s: ExponentialSum, lam_lo: Fraction) -> bool:
    return lam_lo > 1 and all(lam_lo > t.base.abs_bounds()[1] for t in s.terms[1:])


def hper_bound(fmap: MapData, s: ExponentialSum, profile: SpectralProfile) -> HPerBoundTrace:
    """Run the cofinite-period construction with deterministic choices at every step."""
    if not profile.is_hyperbolic:
        raise NotHyperbolic("the linear part has an eigenvalue of modulus 1")
    if profile.is_nilpotent:
        raise NilpotentInput("nilpotent linear part: use the nilpotent shortcut")
    if not s.terms:
        raise LemmaViolation("empty exponential sum")
    wedge = profile.wedge_spectral_radius
    width = wedge.width if wedge.width > 0 else None
    for _ in range(_MAX_REFINE):
        if _separated(s, wedge.lo):
            break
        width = (width or Fraction(1)) / 4
        wedge = wedge_spectral_radius(fmap.linear_part, profile, width)
        s = _assemble(list(s.blocks), s.precision / 4, s.recurrence)
    else:
        raise LemmaViolation("could not separate lambda_1 from the other bases")
    # a coarser lower bound keeps the trace readable; any lower bound is valid
    lam = floor_dyadic(wedge.lo, _RATIO_BITS)
    if not _separated(s, lam):
        lam = wedge.lo
    a1 = Fraction(s.terms[0].coefficient)
    m = s.m
    log = [f"lambda_1 >= {format_rational(lam)} (lower end of Sp(wedge D))", f"m = {m} terms"]

    mu = (1 + lam) / 2
    eps = (lam - mu) / (lam + mu)
    log.append(f"mu = (1 + lambda_1_lb)/2 = {format_rational(mu)}")
    log.append(f"epsilon = (lambda_1_lb - mu)/(lambda_1_lb + mu) = {format_rational(eps)}")

    target = eps / m
    ratios = [(abs(Fraction(t.coefficient) / a1), ceil_dyadic(t.base.abs_bounds()[1] / lam, _RATIO_BITS))
              for t in s.terms[1:]]
    k0 = 1
    while any(c * r ** k0 >= target for c, r in ratios):
        k0 += 1
        if k0 > _MAX_SCAN:
            raise LemmaViolation("no k0 certifies the per-term bound")
    log.append(f"k0 = {k0}: |a_i/a_1| |lambda_i/lambda_1|^k0 < epsilon/m for all i >= 2")

    best = max(nielsen_number(fmap, j) for j in range(1, k0)) if k0 > 1 else None
    l0 = k0
    while True:
        v = nielsen_number(fmap, l0)
        if best is None or v > best:
            break
        best = max(best, v)
        l0 += 1
        if l0 > _MAX_SCAN:
            raise LemmaViolation("N(f^l) never exceeds all earlier values")
    nl0 = nielsen_number(fmap, l0)
    log.append(f"l0 = {l0}: N(f^l0) = {nl0} exceeds N(f^l) for all l < l0")

    if l0 == 1:
        tau = None
        nu = mu
        log.append("no l < l0, so nu = mu")
    else:
        tau = min(_root_lower_bound(Fraction(nl0, nielsen_number(fmap, l)), l0 - l)
                  for l in range(1, l0))
        nu = min(mu, (1 + tau) / 2)
        log.append(f"tau >= {format_rational(tau)} (bisection, resolution 2^-20)")
        log.append(f"nu = min(mu, (1 + tau_lb)/2) = {format_rational(nu)}")

    k0p = _least_k0prime(nu)
    m0 = max(2 ** k0p, 2 * l0 + 1)
    log.append(f"k0' = {k0p}: nu^(2^(k-1)) > k for all k >= k0'")
    log.append(f"m0 = max(2^k0', 2 l0 + 1) = max({2 ** k0p}, {2 * l0 + 1}) = {m0}")
    return HPerBoundTrace(lam, m, mu, eps, k0, l0, tau, nu, k0p, m0, tuple(log))


@dataclass(frozen=True)
class HPerReport:
    mode: str
    max_k: int
    sequence: tuple[int, ...]
    certified_periods: tuple[int, ...]
    cofinite_from: int | None = None
    trace: HPerBoundTrace | None = None
    nilpotent_conclusion: bool = False
    unknown_periods: tuple[int, ...] = ()
    consistent: bool = True

    def to_dict(self, with_derivation: bool = False):
        return {
            "mode": self.mode,
            "maxK": self.max_k,
            "certifiedPeriods": list(self.certified_periods),
            "cofiniteFrom": self.cofinite_from,
            "trace": None if self.trace is None else self.trace.to_dict(with_derivation),
            "nilpotentConclusion": self.nilpotent_conclusion,
            "unknownPeriods": list(self.unknown_periods),
            "consistent": self.consistent,
        }


def nilpotent_shortcut(fmap: MapData, K: int = 40, profile: SpectralProfile | None = None) -> HPerReport:
    """``HPer(f) = {1}``; the averaging formula is re-run to confirm ``N(f^k) = 1`` up to ``K``."""
    if profile is None:
        profile = classify(fmap.linear_part)
    if not profile.is_nilpotent:
        raise NotNilpotent("the linear part is not nilpotent")
    seq = nielsen_sequence(fmap, K)
    bad = [k for k, v in enumerate(seq, start=1) if v != 1]
    if bad:
        raise ConsistencyError(f"nilpotent map with N(f^{bad[0]}) = {seq[bad[0] - 1]} != 1")
    return HPerReport("nilpotentHyperbolic", K, tuple(seq), (1,), nilpotent_conclusion=True)


def hper_report(fmap: MapData, K: int = 40, profile: SpectralProfile | None = None,
                expsum: ExponentialSum | None = None, precision=None) -> HPerReport:
    """ABLSS-certified periods up to ``K`` plus the cofinite bound, checked against each other."""
    if K < 1:
        raise ValueError("K must be at least 1")
    if profile is None:
        profile = classify(fmap.linear_part) if precision is None else classify(fmap.linear_part, precision)
    if not profile.is_hyperbolic:
        raise NotHyperbolic("the linear part has an eigenvalue of modulus 1")
    if profile.is_nilpotent:
        return nilpotent_shortcut(fmap, K, profile)
    if expsum is None:
        expsum = exponential_sum_form(fmap, profile.precision, profile)
    trace = hper_bound(fmap, expsum, profile)
    seq = nielsen_sequence(fmap, K)
    certified = tuple(k for k in range(1, K + 1) if ablss_certify(seq, k))
    missing = [k for k in range(trace.m0, K + 1) if k not in certified]
    if missing:
        raise ConsistencyError(f"k = {missing[0]} >= m0 = {trace.m0} fails the ABLSS inequality")
    unknown = tuple(k for k in range(1, min(trace.m0, K + 1)) if k not in certified)
    return HPerReport("nonNilpotentHyperbolic", K, tuple(seq), certified, trace.m0, trace,
                      unknown_periods=unknown)
