"""
Property suites run next to the per-bound inequality checks.

Each check returns a :class:`PropertyCheck`. Checks marked ``observation``
report what the numbers show and never fail a run (superiority claims that
were only observed numerically, for instance).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..bounds import bessel, confluent, gauss, pcf
from ..core.config import Config, OracleConfig
from ..core.enclosure import Enclosure
from ..core.errors import NotConvergedError, RatioBoundsError
from ..core.types import OracleResult, RatioKind, RatioSpec
from ..oracle import series
from ..oracle.dispatch import OracleCache, evaluate_ratio
from ..oracle.recurrences import reseeded_result
from .riccati import cubic_nullcline_root
from ..utils.logging_config import get_verify_logger

logger = get_verify_logger()

IDENTITY_TOLERANCE = 1e-13


@dataclass
class PropertyCheck:
    name: str
    family: str
    passed: bool = True
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    observation: bool = False
    details: Dict[str, object] = field(default_factory=dict)

    def fail(self, message: str) -> None:
        self.failures.append(message)
        if not self.observation:
            self.passed = False

    def summary(self) -> dict:
        return {
            "name": self.name,
            "family": self.family,
            "passed": self.passed,
            "checked": self.checked,
            "observation": self.observation,
            "failures": list(self.failures[:20]),
            "num_failures": len(self.failures),
            "details": dict(self.details),
        }


def _result(cache: OracleCache, kind: RatioKind, params, x: float, cfg: OracleConfig) -> Optional[OracleResult]:
    try:
        return cache.evaluate(RatioSpec(kind, tuple(params), x), cfg)
    except NotConvergedError as exc:
        return exc.result
    except RatioBoundsError as exc:
        logger.debug(f"{kind.name}{tuple(params)} x={x}: no enclosure ({exc.code})")
        return None


def _close(a: float, b: float, tol: float = IDENTITY_TOLERANCE) -> bool:
    return abs(a - b) <= tol * max(abs(a), abs(b), 1.0)


def _monotone_failures(xs: Sequence[float], values: Sequence[Enclosure], sign: int,
                       max_slope: Optional[float] = None) -> List[str]:
    """Consecutive pairs that are certainly out of order (or certainly too steep)."""
    failures = []
    for (x0, v0), (x1, v1) in zip(zip(xs, values), zip(xs[1:], values[1:])):
        step = x1 - x0
        most = v1.hi - v0.lo
        least = v1.lo - v0.hi
        if sign > 0 and most < 0.0:
            failures.append(f"decreasing on [{x0:.6g}, {x1:.6g}]")
        elif sign < 0 and least > 0.0:
            failures.append(f"increasing on [{x0:.6g}, {x1:.6g}]")
        if max_slope is not None and least / step > max_slope * (1 + Config.MARGIN_REL):
            failures.append(f"slope {least / step:.6g} above {max_slope} on [{x0:.6g}, {x1:.6g}]")
    return failures


# --- oracle --------------------------------------------------------------------
def closed_form_anchors(cfg: OracleConfig, cache: OracleCache) -> PropertyCheck:
    """Oracle enclosures against half-integer Bessel and elementary hypergeometric closed forms."""
    check = PropertyCheck("closed-form anchors", "oracle")

    def expect(label: str, kind: RatioKind, params, x: float, value: float) -> None:
        check.checked += 1
        result = _result(cache, kind, params, x, cfg)
        if result is None or not result.enclosure.contains(value, IDENTITY_TOLERANCE * abs(value)):
            got = None if result is None else str(result.enclosure)
            check.fail(f"{label} at x={x}: expected {value!r}, oracle {got}")

    for x in (0.1, 0.5, 2.0, 10.0, 40.0):
        expect("I(-1/2)/I(1/2) = coth x", RatioKind.BESSEL_I, (0.5,), x, 1.0 / math.tanh(x))
        expect("K(3/2)/K(1/2) = 1 + 1/x", RatioKind.BESSEL_K, (0.5,), x, 1.0 + 1.0 / x)
        expect("K(5/2)/K(3/2)", RatioKind.BESSEL_K, (1.5,), x, (x * x + 3 * x + 3) / (x * (x + 1)))
        expect("I(1/2)K(1/2)", RatioKind.BESSEL_IK_PRODUCT, (0.5,), x, -math.expm1(-2 * x) / (2 * x))
    for x in (0.5, 1.0, 5.0, 20.0):
        expect("m(2,3)/m(1,2)", RatioKind.KUMMER_AB1B1, (1.0, 2.0), x,
               (math.exp(x) * (x - 1) + 1) / (x * math.expm1(x)))
        expect("m(4,4)/m(3,3) = 1", RatioKind.KUMMER_AB1B1, (3.0, 3.0), x, 1.0)
        value, err = series.kummer_series(1.0, 1.0, x)
        check.checked += 1
        if not abs(value - math.exp(x)) <= err + IDENTITY_TOLERANCE * math.exp(x):
            check.fail(f"M(1,1,{x}) = {value!r} +- {err!r}, expected e^x")
        value, err = series.kummer_series(1.0, 2.0, x)
        check.checked += 1
        if not abs(value - math.expm1(x) / x) <= err + IDENTITY_TOLERANCE * value:
            check.fail(f"M(1,2,{x}) = {value!r} +- {err!r}, expected (e^x - 1)/x")
    for x in (0.1, 0.5, 0.9):
        log_term = math.log1p(-x)
        f11 = -log_term / x
        f22 = 2 / (1 - x) + 2 * (log_term + x) / (x * x)
        value, err = series.gauss_series(1.0, 1.0, 2.0, x)
        check.checked += 1
        if not abs(value - f11) <= err + IDENTITY_TOLERANCE * f11:
            check.fail(f"2F1(1,1;2;{x}) = {value!r} +- {err!r}, expected -log(1-x)/x")
        expect("y(2,2,3)/y(1,1,2)", RatioKind.GAUSS, (1.0, 1.0, 2.0), x, 0.5 * f22 / f11)
    return check


_ORACLE_SAMPLES = [
    (RatioKind.PCF, (1.0,), 3.0), (RatioKind.PCF, (5.0,), 20.0), (RatioKind.PCF, (2.0,), -5.0),
    (RatioKind.BESSEL_I, (0.0,), 2.0), (RatioKind.BESSEL_I, (1.0,), 1.0), (RatioKind.BESSEL_I, (10.0,), 30.0),
    (RatioKind.BESSEL_K, (1.0,), 0.5), (RatioKind.BESSEL_K, (3.5,), 10.0),
    (RatioKind.KUMMER_AB1B1, (0.3, 2.0), 5.0), (RatioKind.KUMMER_AB1B1, (5.0, 1.0), 10.0),
    (RatioKind.GAUSS, (1.0, 2.0, 3.0), 0.3),
]


def depth_agreement(cfg: OracleConfig, depth: int = 60) -> PropertyCheck:
    """Enclosures at depth d + 10 and 2d lie inside the enclosure at depth d."""
    check = PropertyCheck(f"depth {depth} nests depth {depth + 10} and {2 * depth}", "oracle")

    def at(d: int) -> OracleConfig:
        return OracleConfig(depth=d, target_rel_width=cfg.target_rel_width, max_depth=d)

    for kind, params, x in _ORACLE_SAMPLES:
        spec = RatioSpec(kind, params, x)
        for deeper in (depth + 10, 2 * depth):
            check.checked += 1
            try:
                first, second = evaluate_ratio(spec, at(depth)), evaluate_ratio(spec, at(deeper))
            except RatioBoundsError as exc:
                check.fail(f"{kind.name}{params} x={x}: {exc.code}")
                continue
            if not second.enclosure.is_subset(first.enclosure):
                check.fail(f"{kind.name}{params} x={x}: depth {deeper} {second.enclosure} "
                           f"not inside depth {depth} {first.enclosure}")
    return check


_RESEEDED_SAMPLES = [
    (RatioKind.PCF, (1.0,), 3.0), (RatioKind.PCF, (2.5,), 0.0), (RatioKind.PCF, (5.0,), 20.0),
    (RatioKind.BESSEL_I, (0.0,), 2.0), (RatioKind.BESSEL_I, (1.0,), 1.0), (RatioKind.BESSEL_I, (10.0,), 30.0),
    (RatioKind.KUMMER_AB1B1, (0.3, 2.0), 5.0), (RatioKind.KUMMER_AB1B1, (2.0, 3.0), 1.0),
    (RatioKind.KUMMER_AB1B1, (5.0, 1.0), 10.0),
]


def seed_independence(cfg: OracleConfig, cache: OracleCache) -> PropertyCheck:
    """A second catalogued seed pair moves the enclosure by no more than its width."""
    check = PropertyCheck("seed independence", "oracle")
    for kind, params, x in _RESEEDED_SAMPLES:
        check.checked += 1
        primary = _result(cache, kind, params, x, cfg)
        try:
            other = reseeded_result(RatioSpec(kind, params, x), cfg)
        except RatioBoundsError as exc:
            check.fail(f"{kind.name}{params} x={x}: reseeded oracle failed ({exc.code})")
            continue
        if primary is None:
            check.fail(f"{kind.name}{params} x={x}: no enclosure from the default seeds")
            continue
        shift = abs(primary.enclosure.mid - other.enclosure.mid)
        allowed = max(primary.enclosure.width, other.enclosure.width)
        if not primary.enclosure.overlaps(other.enclosure) or shift > allowed:
            check.fail(f"{kind.name}{params} x={x}: {primary.enclosure} vs reseeded {other.enclosure}")
    return check


def cross_oracle_agreement(cfg: OracleConfig, cache: OracleCache) -> PropertyCheck:
    """Series quotients overlap the recurrence enclosures (Kummer x <= 20, Gauss x <= 0.9)."""
    check = PropertyCheck("series vs recurrence", "oracle")
    values = (0.3, 1.0, 2.0, 5.0)
    for a in values:
        for b in values:
            for x in (0.01, 0.5, 2.0, 8.0, 20.0):
                check.checked += 1
                result = _result(cache, RatioKind.KUMMER_AB1B1, (a, b), x, cfg)
                try:
                    quotient = series.kummer_ratio_series(a, b, x)
                except RatioBoundsError as exc:
                    check.fail(f"Kummer ({a}, {b}) x={x}: series failed ({exc.code})")
                    continue
                if result is None or not result.enclosure.overlaps(quotient):
                    check.fail(f"Kummer ({a}, {b}) x={x}: series {quotient} vs {result and result.enclosure}")
    for a, b, c in ((0.5, 1.0, 2.0), (1.0, 2.0, 3.0), (2.0, 2.0, 5.0), (5.0, 1.0, 2.0)):
        for x in (0.01, 0.2, 0.5, 0.9):
            check.checked += 1
            result = _result(cache, RatioKind.GAUSS, (a, b, c), x, cfg)
            try:
                quotient = series.gauss_ratio_series(a, b, c, x)
            except RatioBoundsError as exc:
                check.fail(f"Gauss ({a}, {b}, {c}) x={x}: series failed ({exc.code})")
                continue
            if result is None or not result.enclosure.overlaps(quotient):
                check.fail(f"Gauss ({a}, {b}, {c}) x={x}: series {quotient} vs {result and result.enclosure}")
    return check


# --- parabolic cylinder --------------------------------------------------------
def pcf_chain(cfg: OracleConfig, cache: OracleCache,
              n_values: Sequence[float] = (0.6, 1.0, 2.0, 5.0, 10.0, 25.0)) -> PropertyCheck:
    """b21 < b03 < Phi_n for x >= 10."""
    check = PropertyCheck("b21 < b03 < oracle for x >= 10", "pcf")
    for n in n_values:
        for x in np.linspace(10.0, 40.0, 31):
            x = float(x)
            check.checked += 1
            low, sharp = pcf.b21(n, x), pcf.b03(n, x)
            result = _result(cache, RatioKind.PCF, (n,), x, cfg)
            if not low < sharp:
                check.fail(f"n={n}, x={x}: b21={low!r} >= b03={sharp!r}")
            if result is None or sharp > result.enclosure.hi * (1 + Config.MARGIN_REL):
                check.fail(f"n={n}, x={x}: b03={sharp!r} above the oracle")
    return check


def pcf_anchors() -> PropertyCheck:
    check = PropertyCheck("trig33(1,0) = 1 and alg33 <= trig33", "pcf")
    check.checked += 1
    if not _close(pcf.trig33(1.0, 0.0), 1.0):
        check.fail(f"trig33(1, 0) = {pcf.trig33(1.0, 0.0)!r}")
    for n in (0.6, 1.0, 2.0, 5.0):
        for x in np.linspace(-20.0, 20.0, 41):
            check.checked += 1
            trig, alg = pcf.trig33(n, float(x)), pcf.alg33(n, float(x))
            if alg > trig * (1 + Config.MARGIN_REL) + Config.MARGIN_REL:
                check.fail(f"n={n}, x={x}: alg33={alg!r} > trig33={trig!r}")
    return check


def _checked_cubic_root(check: PropertyCheck, family: str, label: str, parameter: float, x: float,
                        terms: Callable[[float], Sequence[float]]) -> Optional[float]:
    """Root of the cubic nullcline, or None after recording a failure."""
    check.checked += 1
    try:
        root = cubic_nullcline_root(parameter, x, family)
    except RatioBoundsError as exc:
        check.fail(f"{label}: {exc.code}")
        return None
    parts = terms(root)
    if abs(sum(parts)) > 1e-12 * max(max(abs(p) for p in parts), 1.0):
        check.fail(f"{label}: residual {sum(parts)!r} at root {root!r}")
    return root


def pcf_cubic_nullcline() -> PropertyCheck:
    """Root of z^3 - (x^2/4 + n) z - x/4 is trig33 - x/2, and 1 at n = 1, x = 0."""
    check = PropertyCheck("cubic nullcline root = trig33 - x/2", "pcf")
    for n in (0.6, 1.0, 2.0, 5.0):
        for x in np.linspace(-20.0, 20.0, 41):
            x = float(x)
            root = _checked_cubic_root(
                check, "pcf", f"n={n}, x={x}", n, x,
                lambda z, n=n, x=x: (z ** 3, -(0.25 * x * x + n) * z, -0.25 * x))
            if root is not None and not _close(root, pcf.trig33(n, x) - 0.5 * x):
                check.fail(f"n={n}, x={x}: root {root!r} vs trig33 - x/2")
    if not _close(cubic_nullcline_root(1.0, 0.0, "pcf"), 1.0):
        check.fail("n=1, x=0: root differs from 1")
    return check


# --- Bessel --------------------------------------------------------------------
def bessel_cubic_nullcline() -> PropertyCheck:
    """Largest root psi of the Bessel cubic gives the trigonometric bound (psi + nu)/x."""
    check = PropertyCheck("cubic nullcline root = x trig_I - nu", "bessel")
    for nu in (0.0, 0.5, 1.0, 3.0, 10.0):
        for x in (0.01, 0.5, 2.0, 10.0, 60.0):
            s = nu * nu + x * x
            root = _checked_cubic_root(
                check, "bessel", f"nu={nu}, x={x}", nu, x,
                lambda psi, s=s, nu=nu: (psi ** 3, psi * psi, -s * psi, -nu * nu))
            if root is not None and not _close((root + nu) / x, bessel.trig_upper_I(nu, x)):
                check.fail(f"nu={nu}, x={x}: (root + nu)/x differs from trig_upper_I")
    return check


def table1_identity() -> PropertyCheck:
    """Classified rows equal their parametric family members."""
    check = PropertyCheck("classified rows = family members", "bessel")
    for row_id, row in bessel.TABLE1_ROWS.items():
        for nu in (0.0, 0.5, 0.75, 1.0, 2.0, 3.5, 10.0):
            if not row.nu_valid(nu):
                continue
            for x in (0.01, 0.5, 1.0, 7.0, 50.0):
                check.checked += 1
                try:
                    member = bessel.table1_family_member(row_id, nu, x)
                except RatioBoundsError:
                    continue
                value = bessel.table1_bound(row_id, nu, x)
                if not _close(value, member):
                    check.fail(f"{row_id} nu={nu} x={x}: {value!r} vs family {member!r}")
    return check


def gapk_equality_at_half() -> PropertyCheck:
    check = PropertyCheck("gap upper bound attained at nu = 1/2", "bessel")
    for x in (0.01, 0.3, 1.0, 4.0, 50.0):
        check.checked += 1
        _, upper = bessel.gapk_bounds(0.5, x)
        if not _close(upper, x + 1.0):
            check.fail(f"x={x}: {upper!r} != x + 1")
    return check


def gapk_monotonicity(cfg: OracleConfig, cache: OracleCache,
                      nu_values: Sequence[float] = (0.5, 1.0, 2.0, 5.0)) -> PropertyCheck:
    """x I_(nu-1)/I_nu and x K_(nu+1)/K_nu increase with slope at most 1."""
    check = PropertyCheck("0 < d(x Phi)/dx <= 1", "bessel")
    xs = [float(v) for v in np.linspace(0.05, 30.0, 120)]
    for kind in (RatioKind.BESSEL_I, RatioKind.BESSEL_K):
        for nu in nu_values:
            values = []
            for x in xs:
                result = _result(cache, kind, (nu,), x, cfg)
                values.append(None if result is None else result.enclosure * x)
            if any(v is None for v in values):
                check.fail(f"{kind.name} nu={nu}: missing oracle values")
                continue
            check.checked += len(xs) - 1
            for failure in _monotone_failures(xs, values, +1, max_slope=1.0):
                check.fail(f"{kind.name} nu={nu}: {failure}")
    return check


def iterated_superiority() -> PropertyCheck:
    """B2 below the classified (1,2) upper bound; B0 against the gap lower bound."""
    check = PropertyCheck("iterated Riccati bounds vs classified ones", "bessel", observation=True)
    better_b2 = total_b2 = better_b0 = total_b0 = 0
    for nu in (0.25, 0.5, 1.0, 2.0, 5.0, 10.0):
        for x in np.linspace(0.05, 50.0, 100):
            x = float(x)
            total_b2 += 1
            if bessel.iterated_riccati_bound(2, nu, x) <= bessel.table1_bound("I(1,2)", nu, x):
                better_b2 += 1
            if nu > 1.5:
                total_b0 += 1
                if bessel.iterated_riccati_bound(0, nu, x) >= bessel.gapk_bounds(nu, x)[0] / x:
                    better_b0 += 1
    check.checked = total_b2 + total_b0
    check.details = {"B2_sharper": f"{better_b2}/{total_b2}", "B0_sharper": f"{better_b0}/{total_b0}"}
    if better_b2 < total_b2:
        check.fail(f"B2 above the (1,2) bound at {total_b2 - better_b2} point(s)")
    if better_b0 < total_b0:
        check.fail(f"B0 below the gap lower bound at {total_b0 - better_b0} point(s)")
    return check


def product_ordering() -> PropertyCheck:
    check = PropertyCheck("trigonometric product bound >= algebraic", "bessel")
    for nu in (0.0, 0.5, 1.0, 5.0, 25.0):
        for x in (0.01, 0.1, 1.0, 10.0, 50.0):
            check.checked += 1
            trig, alg = bessel.product_bounds(nu, x)
            if trig < alg * (1 - Config.MARGIN_REL):
                check.fail(f"nu={nu}, x={x}: {trig!r} < {alg!r}")
    return check


# --- confluent -----------------------------------------------------------------
def kummer_degenerate(cfg: OracleConfig, cache: OracleCache) -> PropertyCheck:
    """a = b: the ratio is 1 and every bound collapses onto it."""
    check = PropertyCheck("a = b collapse", "confluent")
    for a in (0.3, 1.0, 2.0, 5.0):
        for x in (0.001, 0.5, 3.0, 30.0):
            check.checked += 1
            values = {
                "lambda": confluent.lambda_kummer(a, a, x),
                "lambda_tilde": confluent.lambda_tilde(a, a, x),
            }
            if a > 1.0:
                values["b03"] = confluent.b03_confluent(a, a, x)
            lower, upper = confluent.ratio_a1b_bounds(a, a, x)
            for name, value in values.items():
                if not _close(value, 1.0):
                    check.fail(f"{name}({a}, {a}, {x}) = {value!r}")
            if not (_close(lower, a + x) and _close(upper, a + x)):
                check.fail(f"A1B pair at a=b={a}, x={x}: ({lower!r}, {upper!r})")
            result = _result(cache, RatioKind.KUMMER_AB1B1, (a, a), x, cfg)
            if result is None or not result.enclosure.contains(1.0, IDENTITY_TOLERANCE):
                check.fail(f"oracle at a=b={a}, x={x}: {result and result.enclosure}")
    return check


def kummer_monotonicity(cfg: OracleConfig, cache: OracleCache) -> PropertyCheck:
    """h(a,b,x) increases in x when b > a and decreases when b < a."""
    check = PropertyCheck("h monotone with the sign of b - a", "confluent")
    xs = [float(v) for v in np.linspace(0.05, 30.0, 80)]
    for a, b in ((0.3, 1.0), (1.0, 5.0), (2.0, 1.0), (5.0, 0.3)):
        values = []
        for x in xs:
            result = _result(cache, RatioKind.KUMMER_AB1B1, (a, b), x, cfg)
            values.append(None if result is None else result.enclosure)
        if any(v is None for v in values):
            check.fail(f"({a}, {b}): missing oracle values")
            continue
        check.checked += len(xs) - 1
        for failure in _monotone_failures(xs, values, 1 if b > a else -1):
            check.fail(f"({a}, {b}): {failure}")
    return check


def a1b2_transport_identity() -> PropertyCheck:
    """Transporting lambda / lambda_tilde through the A1B2 identity gives eta / eta_tilde."""
    check = PropertyCheck("A1B2 transports = eta pair", "confluent")
    for a, b in ((0.3, 2.0), (1.0, 2.0), (2.0, 1.0), (5.0, 0.3)):
        for x in (0.5, 1.0, 5.0, 20.0):
            check.checked += 1
            from_lambda = confluent.a1b2_from_h(a, b, x, confluent.lambda_kummer(a, b, x))
            from_tilde = confluent.a1b2_from_h(a, b, x, confluent.lambda_tilde(a, b, x))
            if not _close(from_lambda, confluent.eta(a, b, x), 1e-8):
                check.fail(f"({a}, {b}, {x}): lambda transport {from_lambda!r} vs eta {confluent.eta(a, b, x)!r}")
            if not _close(from_tilde, confluent.eta_tilde(a, b, x), 1e-8):
                check.fail(f"({a}, {b}, {x}): lambda_tilde transport {from_tilde!r} "
                           f"vs eta_tilde {confluent.eta_tilde(a, b, x)!r}")
    return check


# --- Gauss ---------------------------------------------------------------------
def gauss_monotonicity(cfg: OracleConfig, cache: OracleCache) -> PropertyCheck:
    """lambda and h increase on (0, 1) when c > ab/(a+b+1)."""
    check = PropertyCheck("lambda and h increasing", "gauss")
    xs = [float(v) for v in np.linspace(0.01, 0.99, 50)]
    for a, b, c in ((0.5, 0.5, 1.0), (1.0, 1.0, 2.0), (2.0, 5.0, 2.0), (5.0, 5.0, 5.0)):
        if not gauss.GaussRatioParams(a, b, c).monotone:
            continue
        lam = [gauss.lambda_gauss(a, b, c, x) for x in xs]
        check.checked += len(xs) - 1
        for x0, l0, l1 in zip(xs, lam, lam[1:]):
            if not l1 > l0:
                check.fail(f"lambda({a}, {b}, {c}) not increasing after x={x0:.4g}")
        values = []
        for x in xs:
            result = _result(cache, RatioKind.GAUSS, (a, b, c), x, cfg)
            values.append(None if result is None else result.enclosure)
        if any(v is None for v in values):
            check.fail(f"({a}, {b}, {c}): missing oracle values")
            continue
        check.checked += len(xs) - 1
        for failure in _monotone_failures(xs, values, +1):
            check.fail(f"h({a}, {b}, {c}): {failure}")
    return check


def gauss_H_identity(cfg: OracleConfig, cache: OracleCache) -> PropertyCheck:
    """2ab/h from the oracle overlaps 2c F(a,b;c;x)/F(a+1,b+1;c+1;x) from the series."""
    check = PropertyCheck("H = 2ab/h", "gauss")
    for a, b, c in ((0.5, 1.0, 2.0), (1.0, 1.0, 2.0), (2.0, 5.0, 5.0)):
        for x in (0.05, 0.3, 0.7):
            check.checked += 1
            result = _result(cache, RatioKind.GAUSS_H, (a, b, c), x, cfg)
            direct = 2 * Enclosure.point(c) / series.gauss_quotient(a, b, c, x)
            if result is None or not result.enclosure.overlaps(direct):
                check.fail(f"({a}, {b}, {c}) x={x}: {result and result.enclosure} vs {direct}")
    return check


def gauss_confluent_limit() -> PropertyCheck:
    check = PropertyCheck("Gauss bounds tend to the confluent ones", "gauss")
    for a, c, x in ((1.0, 2.0, 1.0), (0.5, 3.0, 2.0), (2.0, 5.0, 0.5)):
        check.checked += 1
        report = gauss.confluent_limit_check(a, c, x)
        check.details[f"a={a},c={c},x={x}"] = report.slopes
        if not report.passed:
            check.fail(f"a={a}, c={c}, x={x}: slopes {report.slopes}, notes {report.notes}")
    return check


SUITES: Dict[str, List[Callable[..., PropertyCheck]]] = {
    "pcf": [pcf_chain, pcf_anchors, pcf_cubic_nullcline],
    "bessel": [table1_identity, gapk_equality_at_half, bessel_cubic_nullcline, gapk_monotonicity,
               iterated_superiority, product_ordering],
    "confluent": [kummer_degenerate, kummer_monotonicity, a1b2_transport_identity],
    "gauss": [gauss_monotonicity, gauss_H_identity, gauss_confluent_limit],
}

_NEEDS_ORACLE = {pcf_chain, gapk_monotonicity, kummer_degenerate, kummer_monotonicity,
                 gauss_monotonicity, gauss_H_identity}


def run_property_suite(family: Optional[str], cfg: OracleConfig, cache: OracleCache,
                       include_oracle_checks: bool = True) -> List[PropertyCheck]:
    """All property checks of one family (or every family when None)."""
    families = list(SUITES) if family is None else [family]
    checks: List[PropertyCheck] = []
    if include_oracle_checks and family is None:
        checks += [closed_form_anchors(cfg, cache), depth_agreement(cfg), seed_independence(cfg, cache),
                   cross_oracle_agreement(cfg, cache)]
    for name in families:
        for suite in SUITES[name]:
            checks.append(suite(cfg, cache) if suite in _NEEDS_ORACLE else suite())
    for check in checks:
        status = "✅" if check.passed else "❌"
        logger.debug(f"{status} {check.family}: {check.name} ({check.checked} checked, {len(check.failures)} failure(s))")
    return checks
