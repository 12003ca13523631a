"""
Bounds for the Gauss ratio h(a,b,c,x) = y(a+1,b+1,c+1,x)/y(a,b,c,x) on (0, 1).

With y(a,b,c,x) = Gamma(a)Gamma(b)/Gamma(c) 2F1(a,b;c;x) the ratio reads
h = (ab/c) 2F1(a+1,b+1;c+1;x) / 2F1(a,b;c;x), and the H-form used by the
two-sided bounds is H = 2c 2F1(a,b;c;x)/2F1(a+1,b+1;c+1;x) = 2ab/h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

import numpy as np

from ..core.enclosure import real_part, sqrt
from ._common import require
from .confluent import ku_bounds, lambda_kummer


@dataclass(frozen=True)
class GaussRatioParams:
    a: float
    b: float
    c: float

    def __post_init__(self):
        require(self.a > 0.0 and self.b > 0.0 and self.c > 0.0,
                f"Gauss bounds require a, b, c > 0, got ({self.a}, {self.b}, {self.c})")

    @property
    def d(self) -> float:
        return self.a + self.b + 1

    @property
    def monotone(self) -> bool:
        """c > ab/(a+b+1): lambda is an upper bound and H > lower_H."""
        return self.c > self.a * self.b / self.d

    @property
    def extended(self) -> bool:
        """c > (ab-2)/(a+b+3): the range of upper_H."""
        return self.c > (self.a * self.b - 2) / (self.a + self.b + 3)


def _check_x(x) -> None:
    require(0.0 < real_part(x) < 1.0, f"Gauss bounds require 0 < x < 1, got x={x}")


def lambda_gauss(a, b, c, x):
    """Positive root of ab - (c - dx) y - x(1-x) y^2 = 0, d = a + b + 1."""
    _check_x(x)
    s = c - (a + b + 1) * x
    root = sqrt(s * s + 4 * a * b * x * (1 - x))
    if real_part(s) >= 0.0:
        return 2 * a * b / (s + root)
    return (root - s) / (2 * x * (1 - x))


def lower_H(a, b, c, x):
    """H > c - dx + sqrt((dx - c)^2 + ab F(x)), F = 4x(1-x); needs c > ab/d."""
    params = GaussRatioParams(real_part(a), real_part(b), real_part(c))
    require(params.monotone, f"lower_H requires c > ab/(a+b+1), got {params}")
    _check_x(x)
    s = c - (a + b + 1) * x
    extra = 4 * a * b * x * (1 - x)
    root = sqrt(s * s + extra)
    if real_part(s) >= 0.0:
        return s + root
    return extra / (root - s)


def upper_H(a, b, c, x):
    """H < c - 1 - (d-2)x + sqrt(((d+2)x - (c+1))^2 + (a+1)(b+1) F(x)); needs c > (ab-2)/(a+b+3)."""
    params = GaussRatioParams(real_part(a), real_part(b), real_part(c))
    require(params.extended, f"upper_H requires c > (ab-2)/(a+b+3), got {params}")
    _check_x(x)
    d = a + b + 1
    s = c - 1 - (d - 2) * x
    t = (d + 2) * x - (c + 1)
    extra = 4 * (a + 1) * (b + 1) * x * (1 - x)
    root = sqrt(t * t + extra)
    if real_part(s) >= 0.0:
        return s + root
    # t^2 - s^2 = 4(dx - c)(2x - 1)
    return (4 * (d * x - c) * (2 * x - 1) + extra) / (root - s)


def h_from_H(a, b, value):
    """h = 2ab/H; an upper bound of H becomes a lower bound of h and vice versa."""
    return 2 * a * b / value


# --- confluent limit -----------------------------------------------------------
@dataclass
class LimitCheckReport:
    """Gaps between Gauss bounds at (a, B, c, x/B) and confluent bounds at (a, c, x)."""

    a: float
    c: float
    x: float
    B_values: Tuple[float, ...]
    gaps: Dict[str, Tuple[float, ...]] = field(default_factory=dict)
    slopes: Dict[str, float] = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.slopes) and all(_slope_is_unit(s) for s in self.slopes.values())

    def summary(self) -> dict:
        return {
            "a": self.a,
            "c": self.c,
            "x": self.x,
            "B": list(self.B_values),
            "gaps": {k: list(v) for k, v in self.gaps.items()},
            "slopes": dict(self.slopes),
            "notes": list(self.notes),
        }


def confluent_limit_check(a: float, b_ren: float, x: float,
                          B_list: Sequence[float] = (1e2, 1e3, 1e4, 1e5)) -> LimitCheckReport:
    """Let the second Gauss parameter B grow with x -> x/B; the bounds tend to the Kummer ones.

    h_Gauss(a, B, c, x/B) / B -> h_Kummer(a, c, x) and H_Gauss -> 2c M/M', so
    lambda_gauss / B, lower_H and upper_H approach lambda_kummer and the
    Ku pair. The gaps should decay like 1/B.
    """
    require(a > 0.0 and b_ren > 0.0 and x > 0.0, f"limit check requires a, c, x > 0, got {a}, {b_ren}, {x}")
    B_values = tuple(float(B) for B in B_list)
    report = LimitCheckReport(a, b_ren, x, B_values)
    if a == b_ren:
        report.notes.append("a equals c: both sides reduce to exact constants")

    lam_k = lambda_kummer(a, b_ren, x)
    ku_lo, ku_hi = ku_bounds(a, b_ren, x)
    # the H bounds reproduce the Ku pair in the b > a orientation
    ku_from_lambda, ku_from_tilde = (ku_lo, ku_hi) if b_ren >= a else (ku_hi, ku_lo)

    columns = {"lambda": [], "lower_H": [], "upper_H": []}
    for B in B_values:
        xs = x / B
        params = GaussRatioParams(a, B, b_ren)
        columns["lambda"].append(abs(lambda_gauss(a, B, b_ren, xs) / B - lam_k))
        if params.monotone:
            columns["lower_H"].append(abs(lower_H(a, B, b_ren, xs) - ku_from_lambda))
        if params.extended:
            columns["upper_H"].append(abs(upper_H(a, B, b_ren, xs) - ku_from_tilde))

    logB = np.log10(np.asarray(B_values))
    for name, values in columns.items():
        if len(values) != len(B_values):
            report.notes.append(f"{name}: validity fails for part of the B sweep")
            continue
        report.gaps[name] = tuple(values)
        gaps = np.asarray(values)
        if np.all(gaps > 0.0):
            slope, _ = np.polyfit(logB, np.log10(gaps), 1)
            report.slopes[name] = float(slope)
        else:
            report.notes.append(f"{name}: exact agreement at some B, no slope")
    return report


def _slope_is_unit(slope: float, tolerance: float = 0.3) -> bool:
    return math.isfinite(slope) and abs(slope + 1.0) <= tolerance
