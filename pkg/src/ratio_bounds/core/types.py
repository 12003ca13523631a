"""
Shared domain types: ratio identifiers, bound descriptors and reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

from .enclosure import Enclosure
from .errors import DomainError

Params = Tuple[float, ...]


class Family(str, Enum):
    PCF_U = "pcf"
    BESSEL_I = "bessel_i"
    BESSEL_K = "bessel_k"
    KUMMER = "kummer"
    GAUSS = "gauss"


class RatioKind(str, Enum):
    """Which contiguous ratio a value refers to."""

    PCF = "U(n-1,x)/U(n,x)"
    BESSEL_I = "I(v-1,x)/I(v,x)"
    BESSEL_K = "K(v+1,x)/K(v,x)"
    BESSEL_K_DOWN = "K(v-1,x)/K(v,x)"
    BESSEL_IK_PRODUCT = "I(v,x)K(v,x)"
    KUMMER_AB1B1 = "m(a+1,b+1,x)/m(a,b,x)"
    KUMMER_A1B = "m(a+1,b,x)/m(a,b,x)"
    KUMMER_A1B2 = "m(a+1,b+2,x)/m(a,b,x)"
    KUMMER_H = "2bM(a,b,x)/M(a+1,b+1,x)"
    GAUSS = "y(a+1,b+1,c+1,x)/y(a,b,c,x)"
    GAUSS_H = "2cF(a,b;c;x)/F(a+1,b+1;c+1;x)"

    @property
    def family(self) -> Family:
        return _KIND_FAMILY[self]


_KIND_FAMILY = {
    RatioKind.PCF: Family.PCF_U,
    RatioKind.BESSEL_I: Family.BESSEL_I,
    RatioKind.BESSEL_K: Family.BESSEL_K,
    RatioKind.BESSEL_K_DOWN: Family.BESSEL_K,
    RatioKind.BESSEL_IK_PRODUCT: Family.BESSEL_I,
    RatioKind.KUMMER_AB1B1: Family.KUMMER,
    RatioKind.KUMMER_A1B: Family.KUMMER,
    RatioKind.KUMMER_A1B2: Family.KUMMER,
    RatioKind.KUMMER_H: Family.KUMMER,
    RatioKind.GAUSS: Family.GAUSS,
    RatioKind.GAUSS_H: Family.GAUSS,
}

_PARAM_COUNT = {
    Family.PCF_U: 1,
    Family.BESSEL_I: 1,
    Family.BESSEL_K: 1,
    Family.KUMMER: 2,
    Family.GAUSS: 3,
}


class Side(str, Enum):
    LOWER = "lower"
    UPPER = "upper"
    EQUAL = "equal"

    def flipped(self) -> "Side":
        if self is Side.LOWER:
            return Side.UPPER
        if self is Side.UPPER:
            return Side.LOWER
        return self


class PointStatus(str, Enum):
    PASS = "PASS"
    VIOLATION = "VIOLATION"
    INCONCLUSIVE = "INCONCLUSIVE"


def check_domain(kind: RatioKind, params: Params, x: float) -> None:
    """Raise DomainError unless (params, x) lies in the domain of ``kind``."""
    family = kind.family
    if len(params) != _PARAM_COUNT[family]:
        raise DomainError(f"{kind.name} takes {_PARAM_COUNT[family]} parameter(s), got {len(params)}")
    if not all(math.isfinite(p) for p in params) or not math.isfinite(x):
        raise DomainError(f"non-finite input {params}, x={x}")

    if family is Family.PCF_U:
        (n,) = params
        if not n > 0.5:
            raise DomainError(f"PCF ratio requires n > 1/2, got n={n}")
    elif family in (Family.BESSEL_I, Family.BESSEL_K):
        (nu,) = params
        if not x > 0.0:
            raise DomainError(f"Bessel ratios require x > 0, got x={x}")
        minimum = 0.5 if kind is RatioKind.BESSEL_K else 0.0
        if not nu >= minimum:
            raise DomainError(f"{kind.name} requires nu >= {minimum}, got nu={nu}")
        if kind in (RatioKind.BESSEL_K_DOWN, RatioKind.BESSEL_IK_PRODUCT) and 0.0 < nu < 1.0 and nu != 0.5:
            raise DomainError(f"{kind.name} is served for nu in {{0, 1/2}} or nu >= 1, got nu={nu}")
    elif family is Family.KUMMER:
        a, b = params
        if not (a > 0.0 and b > 0.0):
            raise DomainError(f"Kummer ratios require a, b > 0, got a={a}, b={b}")
        if not x > 0.0:
            raise DomainError(f"Kummer ratios require x > 0, got x={x}")
    elif family is Family.GAUSS:
        a, b, c = params
        if not (a > 0.0 and b > 0.0 and c > 0.0):
            raise DomainError(f"Gauss ratios require a, b, c > 0, got {params}")
        if not 0.0 < x < 1.0:
            raise DomainError(f"Gauss ratios require 0 < x < 1, got x={x}")


@dataclass(frozen=True)
class RatioSpec:
    """One contiguous ratio at one point; the domain is checked on construction."""

    kind: RatioKind
    params: Params
    x: float

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        object.__setattr__(self, "x", float(self.x))
        check_domain(self.kind, self.params, self.x)

    @property
    def family(self) -> Family:
        return self.kind.family


@dataclass(frozen=True)
class OracleResult:
    """An enclosure plus how it was obtained."""

    enclosure: Enclosure
    depth: int
    converged: bool
    method: str

    def map(self, fn: Callable[[Enclosure], Enclosure], method: Optional[str] = None) -> "OracleResult":
        return OracleResult(fn(self.enclosure), self.depth, self.converged, method or self.method)


@dataclass(frozen=True)
class BoundDescriptor:
    """One catalogued bound.

    ``evaluate(params, x)`` returns the bound value. ``validity(params)`` is the
    parameter region where the bound holds; ``x_validity`` optionally restricts x.
    ``orientation`` overrides ``side`` when the side depends on the parameters
    (for instance the Kummer root is an upper bound only when b > a).
    ``accuracy`` is the (m, n) tag in the family's convention, or None when
    the tag is unknown.
    ``gap_powers_at_zero`` overrides the gap powers the tag implies at x = 0
    where the tag counts terms differently from its family.
    """

    id: str
    family: str
    kind: RatioKind
    side: Side
    evaluate: Callable[[Params, float], float] = field(repr=False, compare=False)
    validity: Callable[[Params], bool] = field(repr=False, compare=False)
    accuracy: Optional[Tuple[int, int]] = None
    provenance: str = ""
    strict: bool = True
    certify: bool = True
    orientation: Optional[Callable[[Params], Side]] = field(default=None, repr=False, compare=False)
    x_validity: Optional[Callable[[Params, float], bool]] = field(default=None, repr=False, compare=False)
    gap_powers_at_zero: Optional[Tuple[int, ...]] = None

    def side_for(self, params: Params) -> Side:
        if self.orientation is not None:
            return self.orientation(params)
        return self.side

    def applies(self, params: Params, x: float) -> bool:
        if not self.validity(params):
            return False
        if self.x_validity is not None and not self.x_validity(params, x):
            return False
        try:
            check_domain(self.kind, params, x)
        except DomainError:
            return False
        return True


@dataclass
class PointRecord:
    """Per-point outcome of a bound-versus-oracle comparison."""

    descriptor_id: str
    family: str
    params: Params
    x: float
    side: Side
    bound: float
    oracle_lo: float
    oracle_hi: float
    margin: float
    status: PointStatus
    converged: bool
    method: str

    @property
    def sharpness(self) -> float:
        """Relative distance of the bound from the enclosure midpoint."""
        mid = 0.5 * (self.oracle_lo + self.oracle_hi)
        if mid == 0.0:
            return math.inf
        return abs(self.bound - mid) / abs(mid)

    def as_row(self) -> Dict[str, object]:
        return {
            "family": self.family,
            "bound_id": self.descriptor_id,
            "params": list(self.params),
            "x": self.x,
            "side": self.side.value,
            "bound": self.bound,
            "oracle_lo": self.oracle_lo,
            "oracle_hi": self.oracle_hi,
            "margin": self.margin,
            "sharpness": self.sharpness,
            "status": self.status.value,
            "converged": self.converged,
            "method": self.method,
        }


@dataclass
class VerificationReport:
    descriptor_id: str
    grid_summary: Dict[str, object]
    num_points: int = 0
    num_violations: int = 0
    num_inconclusive: int = 0
    num_not_converged: int = 0
    min_margin: float = math.inf
    worst_point: Optional[Tuple[Params, float]] = None
    records: List[PointRecord] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.num_violations == 0 and self.num_inconclusive == 0

    def add(self, record: PointRecord) -> None:
        self.records.append(record)
        self.num_points += 1
        if record.status is PointStatus.VIOLATION:
            self.num_violations += 1
        elif record.status is PointStatus.INCONCLUSIVE:
            self.num_inconclusive += 1
        if not record.converged:
            self.num_not_converged += 1
        if record.margin < self.min_margin:
            self.min_margin = record.margin
            self.worst_point = (record.params, record.x)

    def summary(self) -> Dict[str, object]:
        return {
            "bound_id": self.descriptor_id,
            "grid": self.grid_summary,
            "num_points": self.num_points,
            "num_violations": self.num_violations,
            "num_inconclusive": self.num_inconclusive,
            "num_not_converged": self.num_not_converged,
            "min_margin": self.min_margin,
            "worst_point": None if self.worst_point is None
            else {"params": list(self.worst_point[0]), "x": self.worst_point[1]},
            "notes": list(self.notes),
        }
