"""
Bounds for ratios of modified Bessel functions.

Phi_nu(x) = I_{nu-1}(x) / I_nu(x) and Phi^K_nu(x) = K_{nu+1}(x) / K_nu(x) are the
two canonical ratios; K_{nu-1}/K_nu only appears for the trigonometric bound
and the product identity. Most bounds have the form
B(alpha, beta, gamma, x) = (alpha + sqrt(beta^2 + gamma^2 x^2)) / x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

from ..core.enclosure import Enclosure, real_part, sqrt
from ..core.errors import DiscriminantError
from ._common import b_form, clamp_unit, require, require_positive_x

LOWER_LAMBDA_RANGE = (0.0, 0.5)
UPPER_LAMBDA_RANGE = (0.5, 2.0)


def _check_lambda(lam, lo: float, hi: float) -> None:
    require(lo <= real_part(lam) <= hi, f"lambda must lie in [{lo}, {hi}], got {lam}")


def _beta_root(lam, nu):
    radicand = nu * nu - (lam - 0.5) * (lam - 0.5)
    require(real_part(radicand) >= 0.0, f"nu^2 - (lambda - 1/2)^2 < 0 at nu={nu}, lambda={lam}",
            code="RADICAND_NEGATIVE")
    if isinstance(radicand, Enclosure) and radicand.lo < 0.0:
        # exactly zero on the edge nu = |lambda - 1/2|; rounding only widened it
        radicand = Enclosure(0.0, radicand.hi)
    return sqrt(radicand)


# --- parametric families -------------------------------------------------------
def lower_I(lam, nu, x):
    """L^(I)_nu(lambda, x) < I_{nu-1}/I_nu for lambda in [0, 1/2], nu >= 1/2 - lambda."""
    _check_lambda(lam, *LOWER_LAMBDA_RANGE)
    require(real_part(nu) >= 0.5 - real_part(lam), f"lower_I requires nu >= 1/2 - lambda, got nu={nu}")
    require_positive_x(x)
    alpha = nu - 0.5 - lam
    beta = sqrt(2 * lam) + _beta_root(lam, nu)
    return b_form(alpha, beta, 1.0, x)


def upper_K(lam, nu, x):
    """U^(K)_nu(lambda, x) > K_{nu+1}/K_nu for lambda in [0, 1/2], nu >= 1/2 - lambda."""
    _check_lambda(lam, *LOWER_LAMBDA_RANGE)
    require(real_part(nu) >= 0.5 - real_part(lam), f"upper_K requires nu >= 1/2 - lambda, got nu={nu}")
    require_positive_x(x)
    alpha = nu + 0.5 + lam
    beta = _beta_root(lam, nu) - sqrt(2 * lam)
    return b_form(alpha, beta, 1.0, x)


def c_upper_I(lam, nu):
    denominator = nu - lam + 2 * sqrt(2 * lam) - 1
    require(real_part(denominator) > 0.0, f"c^(I) denominator {denominator} is not positive",
            code="NONPOSITIVE_C")
    return (nu + lam) / denominator


def c_lower_K(lam, nu):
    if real_part(lam) == 0.5:
        return 1.0  # (nu - 1/2) / (nu - 1/2), continuous at nu = 1/2
    denominator = nu + lam - 2 * sqrt(2 * lam) + 1
    require(real_part(denominator) > 0.0, f"c^(K) denominator {denominator} is not positive",
            code="NONPOSITIVE_C")
    return (nu - lam) / denominator


def upper_I(lam, nu, x):
    """U^(I)_nu(lambda, x) > I_{nu-1}/I_nu for nu >= 0, lambda in [1/2, 2]."""
    _check_lambda(lam, *UPPER_LAMBDA_RANGE)
    require(real_part(nu) >= 0.0, f"upper_I requires nu >= 0, got nu={nu}")
    require_positive_x(x)
    return b_form(nu - lam, nu + lam, sqrt(c_upper_I(lam, nu)), x)


def lower_K(lam, nu, x):
    """L^(K)_nu(lambda, x) < K_{nu+1}/K_nu for lambda in [1/2, 2], nu >= lambda."""
    _check_lambda(lam, *UPPER_LAMBDA_RANGE)
    require(real_part(nu) >= real_part(lam), f"lower_K requires nu >= lambda, got nu={nu}")
    require_positive_x(x)
    return b_form(nu + lam, nu - lam, sqrt(c_lower_K(lam, nu)), x)


# --- classified bounds ---------------------------------------------------------
@dataclass(frozen=True)
class Table1Row:
    """One best bound of the B(alpha, beta, gamma, x) form."""

    function: str  # "I" or "K"
    tag: Tuple[int, int]
    side: str
    alpha: Callable[[float], float]
    beta: Callable[[float], float]
    gamma: Callable[[float], float]
    nu_valid: Callable[[float], bool]
    family_lambda: float

    @property
    def row_id(self) -> str:
        return f"{self.function}{self.tag}".replace(" ", "")


TABLE1_ROWS: Dict[str, Table1Row] = {
    row.row_id: row
    for row in (
        Table1Row("I", (2, 1), "lower", lambda v: v - 1, lambda v: v + 1, lambda v: 1.0,
                  lambda v: v >= 0.0, 0.5),
        Table1Row("I", (0, 3), "lower", lambda v: v - 0.5, lambda v: math.sqrt(v * v - 0.25), lambda v: 1.0,
                  lambda v: v >= 0.5, 0.0),
        Table1Row("I", (1, 2), "upper", lambda v: v - 0.5, lambda v: v + 0.5, lambda v: 1.0,
                  lambda v: v >= 0.0, 0.5),
        Table1Row("I", (3, 0), "upper", lambda v: v - 2, lambda v: v + 2, lambda v: math.sqrt((v + 2) / (v + 1)),
                  lambda v: v >= 0.0, 2.0),
        Table1Row("K", (2, 1), "upper", lambda v: v + 1, lambda v: v - 1, lambda v: 1.0,
                  lambda v: v >= 0.0, 0.5),
        Table1Row("K", (0, 3), "upper", lambda v: v + 0.5, lambda v: math.sqrt(v * v - 0.25), lambda v: 1.0,
                  lambda v: v > 0.5, 0.0),
        Table1Row("K", (1, 2), "lower", lambda v: v + 0.5, lambda v: v - 0.5, lambda v: 1.0,
                  lambda v: v > 0.5, 0.5),
        Table1Row("K", (3, 0), "lower", lambda v: v + 2, lambda v: v - 2, lambda v: math.sqrt((v - 2) / (v - 1)),
                  lambda v: v >= 2.0, 2.0),
    )
}


def table1_bound(row_id: str, nu: float, x: float) -> float:
    """Evaluate a classified bound, e.g. ``table1_bound("I(2,1)", 1.0, 1.0)``."""
    try:
        row = TABLE1_ROWS[row_id]
    except KeyError:
        raise ValueError(f"unknown classified row {row_id!r}; known: {sorted(TABLE1_ROWS)}") from None
    require(row.nu_valid(nu), f"row {row_id} is not valid at nu={nu}")
    require_positive_x(x)
    return b_form(row.alpha(nu), row.beta(nu), row.gamma(nu), x)


def table1_family_member(row_id: str, nu: float, x: float) -> float:
    """The parametric family member a classified row specialises."""
    row = TABLE1_ROWS[row_id]
    family = {
        ("I", "lower"): lower_I,
        ("I", "upper"): upper_I,
        ("K", "upper"): upper_K,
        ("K", "lower"): lower_K,
    }[(row.function, row.side)]
    return family(row.family_lambda, nu, x)


# --- gap, lifted and iterated bounds -------------------------------------------
def gapk_bounds(nu, x):
    """(lower, upper) for x*I_{nu-1}/I_nu and x*K_{nu+1}/K_nu, nu >= 1/2."""
    require(real_part(nu) >= 0.5, f"gapk requires nu >= 1/2, got nu={nu}")
    require_positive_x(x)
    lower = nu + sqrt(nu * nu + x * (x - 1))
    upper = nu + sqrt(nu * nu + x * (x + 1))
    return lower, upper


def i_bound_23(nu, x):
    """Upper bound of I_{nu-1}/I_nu from the backward lift of the gapk lower bound."""
    require(real_part(nu) > 0.0, f"i_bound_23 requires nu > 0, got nu={nu}")
    require_positive_x(x)
    return 2 * nu / x + x / (nu + 1 + sqrt((nu + 1) * (nu + 1) + x * (x - 1)))


def iterated_riccati_bound(alpha: int, nu, x):
    """B_0 (lower, nu >= 1/2) or B_2 (upper, nu >= 0) from one Riccati iteration."""
    require(alpha in (0, 2), f"alpha must be 0 or 2, got {alpha}")
    minimum = 0.5 if alpha == 0 else 0.0
    require(real_part(nu) >= minimum, f"B_{alpha} requires nu >= {minimum}, got nu={nu}")
    require_positive_x(x)
    lam = nu + (alpha - 1) / 2
    delta = (nu - 0.5) + lam / (2 * sqrt(lam * lam + x * x))
    return b_form(delta, delta, 1.0, x)


def i_lower_02(nu, x):
    """(nu - 1/2 + sqrt((nu - 1/2)^2 + x^2)) / x, the positive nullcline of the I Riccati equation."""
    require(real_part(nu) >= 0.5, f"i_lower_02 requires nu >= 1/2, got nu={nu}")
    require_positive_x(x)
    return b_form(nu - 0.5, nu - 0.5, 1.0, x)


def i_upper_11(nu, x):
    """(nu + sqrt(x^2 + nu^2 + x)) / x, upper bound of I_{nu-1}/I_nu."""
    require(real_part(nu) >= 0.5, f"i_upper_11 requires nu >= 1/2, got nu={nu}")
    require_positive_x(x)
    return (nu + sqrt(x * x + nu * nu + x)) / x


# --- trigonometric bounds from the double-ratio cubic --------------------------
def _cubic_parts(nu, x):
    g = math.sqrt(3 * (nu * nu + x * x) + 1)
    h = 9 * nu * nu - 4.5 * x * x - 1
    argument = clamp_unit(h / (g * g * g), DiscriminantError, "Bessel cubic")
    return g, math.acos(argument)


def _polish(poly, dpoly, start: float, steps: int = 2) -> float:
    value = start
    for _ in range(steps):
        slope = dpoly(value)
        if slope == 0.0:
            break
        value -= poly(value) / slope
    return value


def cubic_roots(nu: float, x: float) -> Tuple[float, float]:
    """Largest and smallest real roots psi of psi^3 + psi^2 - (nu^2 + x^2) psi - nu^2."""
    require(nu >= 0.0, f"the Bessel cubic requires nu >= 0, got nu={nu}")
    require_positive_x(x)
    g, theta = _cubic_parts(nu, x)
    s = nu * nu + x * x

    def poly(psi):
        return ((psi + 1.0) * psi - s) * psi - nu * nu

    def dpoly(psi):
        return (3.0 * psi + 2.0) * psi - s

    largest = _polish(poly, dpoly, (2 * g / 3) * math.cos(theta / 3) - 1.0 / 3)
    smallest = -(2 * g / 3) * math.cos(theta / 3 - math.pi / 3) - 1.0 / 3
    return largest, smallest


def trig_upper_I(nu: float, x: float) -> float:
    """Trigonometric upper bound of I_{nu-1}/I_nu, nu >= 0."""
    largest, _ = cubic_roots(nu, x)
    return (largest + nu) / x


def trig_upper_Kratio(nu: float, x: float) -> float:
    """Trigonometric upper bound of K_{nu-1}/K_nu, nu >= 0."""
    _, smallest = cubic_roots(nu, x)
    # u = -(psi + nu) = x K_{nu-1}/K_nu is small at small x; polish it on the
    # cubic rewritten in u so that nothing cancels.
    xx = x * x

    def poly(u):
        return ((-u + (1 - 3 * nu)) * u + (xx + 2 * nu - 2 * nu * nu)) * u + nu * xx

    def dpoly(u):
        return (-3 * u + 2 * (1 - 3 * nu)) * u + (xx + 2 * nu - 2 * nu * nu)

    u = _polish(poly, dpoly, -(smallest + nu))
    return u / x


def product_bounds(nu: float, x: float) -> Tuple[float, float]:
    """(trigonometric, algebraic) lower bounds of I_nu(x) K_nu(x); the first is sharper."""
    require(nu >= 0.0, f"product bounds require nu >= 0, got nu={nu}")
    require_positive_x(x)
    g, theta = _cubic_parts(nu, x)
    trig = math.sqrt(3.0) / (2 * g * math.sin(theta / 3 + math.pi / 3))
    alg = 1.0 / (2 * math.sqrt(x * x + nu * nu + 1.0 / 3))
    return trig, alg


def k_lower_ratio_m1(phi_k_previous):
    """K_{nu-1}/K_nu from Phi^K_{nu-1} = K_nu/K_{nu-1}."""
    return 1 / phi_k_previous
