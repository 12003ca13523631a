"""
Cross-family identities and the I*K product exploration.

I_nu(z)/I_{nu-1}(z) = 2z m(a+1,b+2,2z)/m(a,b,2z) with a = nu - 1/2 and
b = 2nu - 1 ties the Kummer A1B2 oracle to the Bessel I oracle, and the same
substitution turns eta / eta-tilde into the Bessel (0,2) / (1,1) bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..bounds.bessel import i_lower_02, i_upper_11
from ..bounds.confluent import eta, eta_tilde
from ..core.config import Config, OracleConfig
from ..core.enclosure import Enclosure
from ..core.errors import DomainError, NotConvergedError
from ..core.grid import linear_points, log_points
from ..core.types import RatioKind, RatioSpec
from ..oracle.dispatch import OracleCache
from ..utils.logging_config import get_analysis_logger
from .properties import IDENTITY_TOLERANCE, PropertyCheck

logger = get_analysis_logger()

PROVEN_PRODUCT_CONSTANT = 1.0 / 3.0
CONJECTURED_PRODUCT_CONSTANT = 0.2


def bessel_parameters(nu: float) -> Tuple[float, float]:
    """Kummer (a, b) whose A1B2 ratio at 2z carries I_nu/I_{nu-1}."""
    return nu - 0.5, 2 * nu - 1


def _enclosure(cache: OracleCache, spec: RatioSpec, cfg: OracleConfig) -> Tuple[Enclosure, bool]:
    try:
        result = cache.evaluate(spec, cfg)
    except NotConvergedError as exc:
        if exc.result is None:
            raise
        result = exc.result
    return result.enclosure, result.converged


@dataclass
class ConsistencyReport:
    nu: float
    z: float
    kummer_side: Enclosure
    bessel_side: Enclosure
    converged: bool

    @property
    def difference(self) -> float:
        return abs(self.kummer_side.mid - self.bessel_side.mid)

    @property
    def tolerance(self) -> float:
        scale = max(abs(self.kummer_side.mid), abs(self.bessel_side.mid))
        return self.kummer_side.width + self.bessel_side.width + Config.MARGIN_REL * scale

    @property
    def agree(self) -> bool:
        return self.kummer_side.overlaps(self.bessel_side) or self.difference <= self.tolerance

    def summary(self) -> dict:
        return {
            "nu": self.nu,
            "z": self.z,
            "kummer": [self.kummer_side.lo, self.kummer_side.hi],
            "bessel": [self.bessel_side.lo, self.bessel_side.hi],
            "difference": self.difference,
            "tolerance": self.tolerance,
            "agree": self.agree,
            "converged": self.converged,
        }


def bessel_consistency_check(nu: float, z: float, cfg: Optional[OracleConfig] = None,
                             cache: Optional[OracleCache] = None) -> ConsistencyReport:
    """Compare 2z times the A1B2 enclosure with 1 / (I_{nu-1}/I_nu).

    Raises:
        DomainError: Unless nu > 1/2 and z > 0
        NotConvergedError: When an oracle returns no enclosure at all
    """
    if not nu > 0.5:
        raise DomainError(f"the Kummer form of I_nu/I_(nu-1) needs nu > 1/2, got nu={nu}")
    if not z > 0.0:
        raise DomainError(f"z must be positive, got z={z}")
    cfg = cfg if cfg is not None else Config.oracle_config()
    cache = cache if cache is not None else OracleCache()

    a, b = bessel_parameters(nu)
    kummer, kummer_ok = _enclosure(cache, RatioSpec(RatioKind.KUMMER_A1B2, (a, b), 2 * z), cfg)
    bessel, bessel_ok = _enclosure(cache, RatioSpec(RatioKind.BESSEL_I, (nu,), z), cfg)
    report = ConsistencyReport(nu, z, kummer * (2 * z), bessel.reciprocal(), kummer_ok and bessel_ok)
    if not report.agree:
        logger.warning(f"{Config.LOG_ICONS['warning']} nu={nu}, z={z}: Kummer side {report.kummer_side} "
                       f"vs Bessel side {report.bessel_side}")
    return report


def _default_nu() -> List[float]:
    return sorted({*(float(v) for v in linear_points(0.55, 10.0, 20)), 1.0, 1.5})


def _default_z() -> List[float]:
    return sorted({*(float(v) for v in log_points(1e-3, 20.0, 30)), 1.0, 2.0})


def bessel_consistency_suite(nu_values: Optional[Sequence[float]] = None,
                             z_values: Optional[Sequence[float]] = None,
                             cfg: Optional[OracleConfig] = None,
                             cache: Optional[OracleCache] = None) -> PropertyCheck:
    check = PropertyCheck("Kummer A1B2 vs Bessel I oracle", "confluent")
    for nu in nu_values or _default_nu():
        for z in z_values or _default_z():
            check.checked += 1
            try:
                report = bessel_consistency_check(nu, z, cfg, cache)
            except NotConvergedError as exc:
                check.fail(f"nu={nu}, z={z}: no enclosure ({exc.code})")
                continue
            if not report.agree:
                check.fail(f"nu={nu}, z={z}: |difference| {report.difference:.3e} "
                           f"above {report.tolerance:.3e}")
    return check


def eta_specialization_check(nu_values: Optional[Sequence[float]] = None,
                             z_values: Optional[Sequence[float]] = None,
                             tolerance: float = IDENTITY_TOLERANCE) -> PropertyCheck:
    """eta and eta-tilde at the Bessel parameters reproduce the (0,2) and (1,1) I bounds."""
    check = PropertyCheck("eta Bessel specialization", "confluent")
    worst = 0.0
    for nu in nu_values or _default_nu():
        a, b = bessel_parameters(nu)
        for z in z_values or _default_z():
            pairs = (
                ("eta", 1.0 / (2 * z * eta(a, b, 2 * z)), i_lower_02(nu, z)),
                ("eta-tilde", 1.0 / (2 * z * eta_tilde(a, b, 2 * z)), i_upper_11(nu, z)),
            )
            for label, transported, direct in pairs:
                check.checked += 1
                deviation = abs(transported - direct) / max(abs(direct), 1.0)
                worst = max(worst, deviation)
                if deviation > tolerance:
                    check.fail(f"{label} at nu={nu}, z={z}: {transported!r} vs {direct!r}")
    check.details["max_relative_deviation"] = worst
    return check


@dataclass
class ProductExploration:
    """Where I_nu K_nu sits against 1 / (2 sqrt(x^2 + nu^2 + c))."""

    points: int = 0
    min_quantity: float = math.inf
    min_at: Tuple[float, float] = (math.nan, math.nan)
    max_constant: float = -math.inf
    max_constant_at: Tuple[float, float] = (math.nan, math.nan)
    skipped: List[str] = field(default_factory=list)

    @property
    def proven_constant_holds(self) -> bool:
        return self.max_constant < PROVEN_PRODUCT_CONSTANT

    @property
    def conjectured_constant_observed(self) -> bool:
        return self.max_constant < CONJECTURED_PRODUCT_CONSTANT

    def summary(self) -> dict:
        return {
            "points": self.points,
            "min_quantity": self.min_quantity,
            "min_at": list(self.min_at),
            "max_constant": self.max_constant,
            "max_constant_at": list(self.max_constant_at),
            "proven_constant_holds": self.proven_constant_holds,
            "conjectured_constant_observed": self.conjectured_constant_observed,
            "skipped": len(self.skipped),
        }


def product_constant_exploration(nu_values: Sequence[float] = (0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0),
                                 xs: Optional[Sequence[float]] = None,
                                 cfg: Optional[OracleConfig] = None,
                                 cache: Optional[OracleCache] = None) -> ProductExploration:
    """Empirical minimum of 4 (I K)^2 (x^2 + nu^2) - 1 and the implied constant.

    The implied constant at a point is 1/(4 (I K)^2) - x^2 - nu^2, the smallest
    c with I K >= 1 / (2 sqrt(x^2 + nu^2 + c)) there. Values come from oracle
    midpoints and are reported only.
    """
    cfg = cfg if cfg is not None else Config.oracle_config()
    cache = cache if cache is not None else OracleCache()
    xs = xs if xs is not None else [float(x) for x in log_points(1e-2, 50.0, 40)]
    result = ProductExploration()
    for nu in nu_values:
        for x in xs:
            try:
                product, _ = _enclosure(cache, RatioSpec(RatioKind.BESSEL_IK_PRODUCT, (nu,), x), cfg)
            except (DomainError, NotConvergedError) as exc:
                result.skipped.append(f"nu={nu}, x={x}: {exc.code}")
                continue
            value = product.mid
            radius = x * x + nu * nu
            quantity = 4 * value * value * radius - 1
            constant = 1.0 / (4 * value * value) - radius
            result.points += 1
            if quantity < result.min_quantity:
                result.min_quantity, result.min_at = quantity, (nu, x)
            if constant > result.max_constant:
                result.max_constant, result.max_constant_at = constant, (nu, x)
    logger.info(f"{Config.LOG_ICONS['ruler']} I*K exploration: min 4(IK)^2(x^2+nu^2)-1 = "
                f"{result.min_quantity:.6g} at (nu, x)={result.min_at}; implied constant "
                f"{result.max_constant:.6g} at {result.max_constant_at}")
    return result
