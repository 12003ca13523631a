"""
Empirical certification of accuracy tags and leading gap coefficients.

A bound with tag (m, n) reproduces a given number of leading terms of the
ratio's expansion at each end of its domain, so the gap between bound and
ratio decays like a power of x there. :func:`estimate_order` measures that
power by a log-log regression over a window of oracle samples and
:func:`certify_accuracy_table` compares it with the powers the tag allows.

Tag conventions differ by family. Bessel, Kummer and Gauss tags read
(terms at 0, terms at infinity); parabolic cylinder tags read
(terms at -infinity, terms at +infinity).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..bounds import confluent
from ..core.config import Config, OracleConfig
from ..core.errors import (
    ConfigError,
    NotConvergedError,
    OverprecisionError,
    RatioBoundsError,
    ShrinkWindowError,
)
from ..core.types import BoundDescriptor, OracleResult, Params, RatioKind, RatioSpec
from ..oracle.dispatch import OracleCache
from ..utils.logging_config import get_accuracy_logger
from .catalog import CatalogEntry, get_catalog

logger = get_accuracy_logger()

Window = Tuple[float, float]
RatioOracle = Callable[[float], OracleResult]

FIT_TARGET_WIDTH = 1e-15


class FitSide(str, Enum):
    AT_ZERO = "0"
    AT_PLUS_INF = "+inf"
    AT_MINUS_INF = "-inf"


class TagStatus(str, Enum):
    MATCH = "MATCH"
    MISMATCH = "MISMATCH"
    UNFIT = "UNFIT"


@dataclass
class OrderFit:
    side: FitSide
    exponent: float
    stderr: float
    coefficient: float
    residual: float
    window: Window
    points: int
    dropped: int = 0

    def summary(self) -> dict:
        return {
            "side": self.side.value,
            "exponent": self.exponent,
            "stderr": self.stderr,
            "coefficient": self.coefficient,
            "residual": self.residual,
            "window": list(self.window),
            "points": self.points,
            "dropped": self.dropped,
        }


# Leading power of each ratio at x = 0; the relative gap sets the fit window.
_LEADING_POWER_AT_ZERO = {
    RatioKind.BESSEL_I: -1,
    RatioKind.BESSEL_K: -1,
    RatioKind.BESSEL_K_DOWN: 1,
    RatioKind.KUMMER_AB1B1: 0,
    RatioKind.KUMMER_A1B: 0,
    RatioKind.KUMMER_A1B2: 0,
    RatioKind.KUMMER_H: 0,
    RatioKind.GAUSS: 0,
    RatioKind.GAUSS_H: 0,
}


@dataclass(frozen=True)
class FitSettings:
    """Parameters and windows used to certify one family's tags."""

    params: Params
    sides: Tuple[FitSide, ...]
    windows: Dict[FitSide, Tuple[Window, ...]]


FIT_SETTINGS: Dict[str, FitSettings] = {
    "pcf": FitSettings(
        (6.25,), (FitSide.AT_MINUS_INF, FitSide.AT_PLUS_INF),
        {FitSide.AT_PLUS_INF: ((30.0, 100.0), (10.0, 30.0)),
         FitSide.AT_MINUS_INF: ((-100.0, -30.0), (-30.0, -10.0))},
    ),
    "bessel": FitSettings(
        (3.5,), (FitSide.AT_ZERO, FitSide.AT_PLUS_INF),
        {FitSide.AT_PLUS_INF: ((30.0, 100.0), (10.0, 30.0))},
    ),
    "confluent": FitSettings(
        (2.0, 3.0), (FitSide.AT_ZERO, FitSide.AT_PLUS_INF),
        {FitSide.AT_PLUS_INF: ((50.0, 200.0), (20.0, 50.0))},
    ),
}


def allowed_exponents(descriptor: BoundDescriptor, side: FitSide) -> Tuple[int, ...]:
    """Gap powers consistent with the descriptor's tag at one end."""
    if descriptor.accuracy is None:
        raise ConfigError(f"{descriptor.id} has no accuracy tag")
    first, second = descriptor.accuracy
    kind = descriptor.kind
    if kind is RatioKind.PCF:
        if side is FitSide.AT_ZERO:
            raise ConfigError("parabolic cylinder tags have no x = 0 end")
        terms = second if side is FitSide.AT_PLUS_INF else first
        # n correct terms leave a relative gap of order x^(1-2n) or x^(2-2n)
        return (1 - 2 * terms, 2 - 2 * terms)
    if side is FitSide.AT_MINUS_INF:
        raise ConfigError(f"{descriptor.id} has no -infinity end")
    if side is FitSide.AT_ZERO:
        if descriptor.gap_powers_at_zero is not None:
            return tuple(descriptor.gap_powers_at_zero)
        if kind in (RatioKind.BESSEL_I, RatioKind.BESSEL_K):
            return (2 * first - 2, 2 * first - 1)
        if kind is RatioKind.BESSEL_K_DOWN:
            return (2 * first, 2 * first + 1)
        return (first,)
    if kind is RatioKind.KUMMER_A1B2:
        return (-(second + 1),)
    return (-second,)


def zero_window(descriptor: BoundDescriptor) -> Window:
    """[x_lo, 10 x_lo] with the relative gap near 1e-8 at x_lo."""
    relative = max(allowed_exponents(descriptor, FitSide.AT_ZERO)) - _LEADING_POWER_AT_ZERO[descriptor.kind]
    x_lo = 1e-4 if relative <= 0 else min(max(10.0 ** (-8.0 / relative), 1e-4), 0.1)
    return (x_lo, 10.0 * x_lo)


def _fit_config(cfg: Optional[OracleConfig]) -> OracleConfig:
    base = cfg if cfg is not None else Config.oracle_config()
    return OracleConfig(depth=base.depth, target_rel_width=FIT_TARGET_WIDTH, max_depth=base.max_depth)


def _sample_x(side: FitSide, window: Window, points: int) -> np.ndarray:
    lo, hi = sorted(window)
    if side is FitSide.AT_MINUS_INF:
        return -np.logspace(np.log10(-hi), np.log10(-lo), points)
    return np.logspace(np.log10(lo), np.log10(hi), points)


def gap_samples(descriptor: BoundDescriptor, params: Params, xs: Sequence[float],
                cfg: OracleConfig, cache: OracleCache,
                oracle: Optional[RatioOracle] = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(x, bound - ratio, noise) at every sample where both sides are defined.

    ``oracle(x)`` replaces the cached oracle for the descriptor's ratio, for
    ratios that are only reachable through a recurrence step.
    """
    if oracle is None:
        def oracle(x: float) -> OracleResult:
            return cache.evaluate(RatioSpec(descriptor.kind, params, x), cfg)

    kept_x, gaps, noise = [], [], []
    for x in xs:
        x = float(x)
        try:
            bound = float(descriptor.evaluate(params, x))
            try:
                result = oracle(x)
            except NotConvergedError as exc:
                if exc.result is None:
                    continue
                result = exc.result
        except RatioBoundsError as exc:
            logger.debug(f"{descriptor.id} at {params}, x={x}: skipped ({exc.code})")
            continue
        enclosure = result.enclosure
        kept_x.append(x)
        gaps.append(bound - enclosure.mid)
        noise.append(enclosure.width + 4 * math.ulp(max(abs(bound), abs(enclosure.mid))))
    return np.asarray(kept_x), np.asarray(gaps), np.asarray(noise)


def _usable(gaps: np.ndarray, noise: np.ndarray, what: str) -> np.ndarray:
    if gaps.size == 0:
        raise ShrinkWindowError(f"{what}: no sample could be evaluated")
    keep = np.abs(gaps) > Config.FIT_NOISE_FACTOR * noise
    if not np.any(keep):
        raise OverprecisionError(f"{what}: the gap is below the oracle noise at every sample")
    signs = np.sign(gaps[keep])
    if np.any(signs != signs[0]):
        raise ShrinkWindowError(f"{what}: the gap changes sign inside the window")
    if int(np.sum(keep)) < Config.FIT_MIN_POINTS:
        raise ShrinkWindowError(f"{what}: only {int(np.sum(keep))} samples clear the noise floor")
    return keep


def estimate_order(target: Union[CatalogEntry, BoundDescriptor], params: Params, side: FitSide,
                   window: Optional[Window] = None, cfg: Optional[OracleConfig] = None,
                   cache: Optional[OracleCache] = None, points: int = Config.FIT_POINTS) -> OrderFit:
    """Regress log|bound - ratio| on log|x| over ``window``.

    Samples whose gap does not clear ``FIT_NOISE_FACTOR`` times the oracle
    noise are dropped; fewer than ``FIT_MIN_POINTS`` survivors raise
    ShrinkWindowError and no survivor at all raises OverprecisionError.
    """
    descriptor = target.descriptor if isinstance(target, CatalogEntry) else target
    if window is None:
        if side is not FitSide.AT_ZERO:
            raise ConfigError("only the x = 0 window has a default; pass a window")
        window = zero_window(descriptor)
    fit_cfg = _fit_config(cfg)
    cache = cache if cache is not None else OracleCache()
    what = f"{descriptor.id} {tuple(params)} at {side.value} on {window}"

    xs, gaps, noise = gap_samples(descriptor, tuple(params), _sample_x(side, window, points), fit_cfg, cache)
    keep = _usable(gaps, noise, what)
    log_x = np.log(np.abs(xs[keep]))
    log_gap = np.log(np.abs(gaps[keep]))
    (slope, intercept), cov = np.polyfit(log_x, log_gap, 1, cov=True)
    fitted = slope * log_x + intercept
    residual = float(np.sqrt(np.mean((log_gap - fitted) ** 2)))
    sign = float(np.sign(gaps[keep][0]))
    fit = OrderFit(side, float(slope), float(np.sqrt(max(cov[0, 0], 0.0))), sign * float(np.exp(intercept)),
                   residual, (float(min(window)), float(max(window))), int(np.sum(keep)),
                   int(xs.size - np.sum(keep)))
    logger.debug(f"{what}: exponent {fit.exponent:.3f} +- {fit.stderr:.3f} from {fit.points} points")
    return fit


def leading_coefficient(target: Union[CatalogEntry, BoundDescriptor], params: Params, side: FitSide,
                        power: int, window: Window, cfg: Optional[OracleConfig] = None,
                        cache: Optional[OracleCache] = None, points: int = Config.FIT_POINTS,
                        oracle: Optional[RatioOracle] = None) -> float:
    """C in bound - ratio = C |x|^power (1 + O(t)), t = x at 0 and 1/x at infinity.

    Regresses (bound - ratio) |x|^-power linearly on t and returns the intercept.
    """
    descriptor = target.descriptor if isinstance(target, CatalogEntry) else target
    xs, gaps, noise = gap_samples(descriptor, tuple(params), _sample_x(side, window, points),
                                  _fit_config(cfg), cache if cache is not None else OracleCache(), oracle)
    keep = _usable(gaps, noise, f"{descriptor.id} coefficient at {side.value}")
    scaled = gaps[keep] * np.abs(xs[keep]) ** (-power)
    t = xs[keep] if side is FitSide.AT_ZERO else 1.0 / xs[keep]
    _, intercept = np.polyfit(t, scaled, 1)
    return float(intercept)


# --- tag certification ---------------------------------------------------------
@dataclass
class TagCheck:
    bound_id: str
    tag: Tuple[int, int]
    side: FitSide
    params: Params
    allowed: Tuple[int, ...]
    status: TagStatus
    fit: Optional[OrderFit] = None
    error: Optional[str] = None
    blocking: bool = True

    def as_row(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "tag": list(self.tag),
            "side": self.side.value,
            "params": list(self.params),
            "allowed": list(self.allowed),
            "status": self.status.value,
            "exponent": None if self.fit is None else self.fit.exponent,
            "stderr": None if self.fit is None else self.fit.stderr,
            "window": None if self.fit is None else list(self.fit.window),
            "error": self.error,
            "blocking": self.blocking,
        }


@dataclass
class CoefficientCheck:
    name: str
    expected: float
    observed: float
    tolerance: float
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        if self.error is not None or not math.isfinite(self.observed):
            return False
        return abs(self.observed - self.expected) <= self.tolerance * abs(self.expected)

    def as_row(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "observed": self.observed,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "error": self.error,
        }


@dataclass
class AccuracyReport:
    tags: List[TagCheck] = field(default_factory=list)
    coefficients: List[CoefficientCheck] = field(default_factory=list)

    @property
    def mismatches(self) -> List[TagCheck]:
        return [t for t in self.tags if t.blocking and t.status is TagStatus.MISMATCH]

    @property
    def unfit(self) -> List[TagCheck]:
        return [t for t in self.tags if t.blocking and t.status is TagStatus.UNFIT]

    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.unfit and all(c.passed for c in self.coefficients)

    def summary(self) -> dict:
        return {
            "tags": len(self.tags),
            "matches": sum(1 for t in self.tags if t.status is TagStatus.MATCH),
            "mismatches": len(self.mismatches),
            "unfit": len(self.unfit),
            "coefficients": len(self.coefficients),
            "coefficient_failures": sum(1 for c in self.coefficients if not c.passed),
            "passed": self.passed,
        }


def _windows(descriptor: BoundDescriptor, settings: FitSettings, side: FitSide) -> Tuple[Window, ...]:
    if side is FitSide.AT_ZERO:
        lo, hi = zero_window(descriptor)
        # fall back to a window one decade further from zero
        return ((lo, hi), (hi, min(10.0 * hi, 1.0)))
    return settings.windows[side]


def check_tag_side(entry: CatalogEntry, side: FitSide, cfg: Optional[OracleConfig], cache: OracleCache,
                   params: Optional[Params] = None) -> TagCheck:
    descriptor = entry.descriptor
    settings = FIT_SETTINGS[entry.family]
    params = tuple(params) if params is not None else settings.params
    allowed = allowed_exponents(descriptor, side)
    errors = []
    for window in _windows(descriptor, settings, side):
        try:
            fit = estimate_order(entry, params, side, window, cfg, cache)
        except (ShrinkWindowError, OverprecisionError) as exc:
            errors.append(f"{exc.code}: {exc}")
            continue
        match = any(abs(fit.exponent - k) <= Config.FIT_EXPONENT_TOLERANCE for k in allowed)
        return TagCheck(descriptor.id, descriptor.accuracy, side, params, allowed,
                        TagStatus.MATCH if match else TagStatus.MISMATCH, fit, blocking=descriptor.certify)
    return TagCheck(descriptor.id, descriptor.accuracy, side, params, allowed, TagStatus.UNFIT,
                    error="; ".join(errors), blocking=descriptor.certify)


# --- leading coefficients ------------------------------------------------------
def _coefficient(name: str, expected: float, tolerance: float, compute: Callable[[], float]) -> CoefficientCheck:
    try:
        observed = compute()
    except RatioBoundsError as exc:
        return CoefficientCheck(name, expected, math.nan, tolerance, error=f"{exc.code}: {exc}")
    return CoefficientCheck(name, expected, observed, tolerance)


def pcf_order_zero_oracle(cfg: OracleConfig, cache: OracleCache) -> RatioOracle:
    """Phi_0 = x + (1/2) / Phi_1; n = 0 lies outside the oracle's own domain."""
    def oracle(x: float) -> OracleResult:
        result = cache.evaluate(RatioSpec(RatioKind.PCF, (1.0,), x), cfg)
        return result.map(lambda phi: x + 0.5 / phi, method=f"{result.method}+step")
    return oracle


def _remainder_slope(n: float, window: Window, remainder: Callable[[float, float], float],
                     cfg: OracleConfig, cache: OracleCache) -> float:
    """Log-log slope of |remainder(x, Phi_n(x))| over the samples that clear the oracle noise."""
    lo, hi = window
    xs = np.sign(lo) * np.logspace(np.log10(abs(lo)), np.log10(abs(hi)), Config.FIT_POINTS)
    kept_x, tail = [], []
    for x in xs:
        try:
            enclosure = cache.evaluate(RatioSpec(RatioKind.PCF, (n,), float(x)), cfg).enclosure
        except RatioBoundsError as exc:
            logger.debug(f"pcf n={n:g} x={x:.6g}: skipped ({exc.code})")
            continue
        value = remainder(float(x), enclosure.mid)
        # the remainder inherits the relative width of Phi
        if abs(value) > Config.FIT_NOISE_FACTOR * enclosure.rel_width:
            kept_x.append(abs(x))
            tail.append(abs(value))
    if len(kept_x) < Config.FIT_MIN_POINTS:
        raise ShrinkWindowError(f"pcf remainder at n={n:g} on {window}: "
                                f"only {len(kept_x)} samples clear the noise floor")
    slope, _ = np.polyfit(np.log(kept_x), np.log(tail), 1)
    return float(slope)


def pcf_coefficient_checks(cfg: Optional[OracleConfig], cache: OracleCache) -> List[CoefficientCheck]:
    """b03 gap -(n+1/2)(n+3/2)/x^5 and the two-term expansions of Phi_n at both ends."""
    entry = get_catalog().get("pcf.b03")
    fit_cfg = _fit_config(cfg)
    checks = []
    for n in (0.0, 1.0, 5.0):
        oracle = pcf_order_zero_oracle(fit_cfg, cache) if n == 0.0 else None
        checks.append(_coefficient(
            f"pcf.b03 gap * x^5 at n={n:g}", -(n + 0.5) * (n + 1.5), 0.02,
            lambda n=n, oracle=oracle: leading_coefficient(entry, (n,), FitSide.AT_PLUS_INF, -5, (30.0, 100.0),
                                                           cfg, cache, oracle=oracle)))

    for n in (1.0, 5.0):
        def plus_slope(n=n):
            return _remainder_slope(n, (30.0, 100.0), lambda x, phi: phi / x - 1.0 - (n + 0.5) / (x * x),
                                    fit_cfg, cache)

        def minus_slope(n=n):
            # inside the series range, where the oracle converges for negative x
            return _remainder_slope(n, (-10.0, -40.0), lambda x, phi: phi * x / (-(n - 0.5)) - 1.0,
                                    fit_cfg, cache)

        # next terms are O(x^-4) at +inf and O(x^-2) at -inf
        checks.append(_coefficient(f"pcf Phi/x - 1 - (n+1/2)/x^2 decay at n={n:g}", -4.0, 0.125, plus_slope))
        checks.append(_coefficient(f"pcf -x Phi/(n-1/2) - 1 decay at n={n:g}", -2.0, 0.25, minus_slope))
    return checks


def confluent_coefficient_checks(cfg: Optional[OracleConfig], cache: OracleCache) -> List[CoefficientCheck]:
    """lambda(a-1,b-1,x): gap (a-1)(b-a)/x^3 at infinity and (b-a)/((b-1)b) at zero."""
    entry = get_catalog().get("confluent.b03")
    checks = []
    for a, b in ((2.0, 3.0), (1.5, 4.0), (3.0, 2.0)):
        # the expansions are stated for h - bound; the fit measures bound - h
        checks.append(_coefficient(
            f"confluent.b03 gap * x^3 at (a, b)=({a:g}, {b:g})", (a - 1) * (b - a), 0.02,
            lambda a=a, b=b: -leading_coefficient(entry, (a, b), FitSide.AT_PLUS_INF, -3, (50.0, 200.0), cfg, cache)))
        checks.append(_coefficient(
            f"confluent.b03 gap at 0, (a, b)=({a:g}, {b:g})", (b - a) / ((b - 1) * b), 0.01,
            lambda a=a, b=b: -leading_coefficient(entry, (a, b), FitSide.AT_ZERO, 0, (1e-4, 1e-3), cfg, cache)))

    fit_cfg = _fit_config(cfg)
    x = 1e-4
    for a, b in ((0.3, 1.0), (2.0, 3.0), (5.0, 0.3)):
        def slope(a=a, b=b):
            h = cache.evaluate(RatioSpec(RatioKind.KUMMER_AB1B1, (a, b), x), fit_cfg).enclosure.mid
            return (h * b / a - 1.0) / x

        expected = (confluent.h_expansion_at_zero(a, b, x) * b / a - 1.0) / x
        checks.append(_coefficient(f"confluent h slope at 0, (a, b)=({a:g}, {b:g})", expected, 0.01, slope))

    far = 500.0
    for a, b in ((0.3, 1.0), (2.0, 3.0), (5.0, 0.3)):
        def decay(a=a, b=b):
            h = cache.evaluate(RatioSpec(RatioKind.KUMMER_AB1B1, (a, b), far), fit_cfg).enclosure.mid
            return (h - 1.0) * far

        expected = (confluent.h_expansion_at_infinity(a, b, far) - 1.0) * far
        checks.append(_coefficient(f"confluent x (h - 1) at infinity, (a, b)=({a:g}, {b:g})", expected, 0.02, decay))
    return checks


def gauss_coefficient_checks(cfg: Optional[OracleConfig], cache: OracleCache) -> List[CoefficientCheck]:
    """(h c/(ab) - 1)/x at x = 1e-4 against (c(a+b+1) - ab)/(c(c+1))."""
    fit_cfg = _fit_config(cfg)
    x = 1e-4
    checks = []
    for a, b, c in ((1.0, 1.0, 2.0), (0.5, 2.0, 1.0), (2.0, 3.0, 3.0), (5.0, 5.0, 5.0)):
        def slope(a=a, b=b, c=c):
            h = cache.evaluate(RatioSpec(RatioKind.GAUSS, (a, b, c), x), fit_cfg).enclosure.mid
            return (h * c / (a * b) - 1.0) / x

        checks.append(_coefficient(f"gauss slope at 0, (a, b, c)=({a:g}, {b:g}, {c:g})",
                                   (c * (a + b + 1) - a * b) / (c * (c + 1)), 0.01, slope))
    return checks


COEFFICIENT_SUITES: Dict[str, Callable[[Optional[OracleConfig], OracleCache], List[CoefficientCheck]]] = {
    "pcf": pcf_coefficient_checks,
    "confluent": confluent_coefficient_checks,
    "gauss": gauss_coefficient_checks,
}


def certify_accuracy_table(family: Optional[str] = None, bound_ids: Optional[Sequence[str]] = None,
                           cfg: Optional[OracleConfig] = None, cache: Optional[OracleCache] = None,
                           workers: int = 1, include_uncertified: bool = False,
                           coefficients: bool = True) -> AccuracyReport:
    """Fit both ends of every tagged bound in scope and run the coefficient checks.

    Bounds whose tag is recorded but not claimed (``certify=False``) are fitted
    only with ``include_uncertified`` and never fail the report.
    """
    catalog = get_catalog()
    cache = cache if cache is not None else OracleCache()
    entries = [e for e in catalog.select(family, bound_ids) if e.descriptor.accuracy is not None]
    if not include_uncertified and bound_ids is None:
        entries = [e for e in entries if e.descriptor.certify]
    jobs = [(entry, side) for entry in entries if entry.family in FIT_SETTINGS
            for side in FIT_SETTINGS[entry.family].sides]

    def run(job):
        return check_tag_side(job[0], job[1], cfg, cache)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tags = list(pool.map(run, jobs))
    else:
        tags = [run(job) for job in jobs]

    report = AccuracyReport(sorted(tags, key=lambda t: (t.bound_id, t.side.value)))
    if coefficients and bound_ids is None:
        families = [family] if family is not None else list(Config.FAMILIES)
        for name in families:
            suite = COEFFICIENT_SUITES.get(name)
            if suite is not None:
                report.coefficients += suite(cfg, cache)
    for tag in report.tags:
        if tag.status is not TagStatus.MATCH:
            logger.debug(f"{tag.bound_id} at {tag.side.value}: {tag.status.value} "
                         f"(allowed {tag.allowed}, fit {tag.fit.exponent if tag.fit else None}, {tag.error})")
    return report


__all__ = [
    "FitSide",
    "OrderFit",
    "TagStatus",
    "TagCheck",
    "CoefficientCheck",
    "AccuracyReport",
    "allowed_exponents",
    "zero_window",
    "estimate_order",
    "leading_coefficient",
    "check_tag_side",
    "certify_accuracy_table",
]
