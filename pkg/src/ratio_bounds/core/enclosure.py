"""
Outward-rounded enclosure arithmetic on binary64.

An :class:`Enclosure` ``[lo, hi]`` certifies ``lo <= value <= hi``. Every
operation computes the interval result in round-to-nearest and then widens it
by one ulp on each side, so the result always contains the exact result for
all operands drawn from the inputs. Plain floats mixed into an expression are
treated as exact points.

The module also exposes small generic helpers (``sqrt``, ``square``, ``acos``,
``cos``, ``sin``, ``real_part``) so that a bound formula written once can be
evaluated on floats, on complex numbers (complex-step derivatives) and on
enclosures (rigorous oracle seeds).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

from .errors import (
    DivisionContainsZeroError,
    EmptyIntersectionError,
    EnclosureError,
    NegativeSqrtError,
)

Operand = Union["Enclosure", int, float]


def _down(value: float) -> float:
    return math.nextafter(value, -math.inf)


def _up(value: float) -> float:
    return math.nextafter(value, math.inf)


def _finite_products(*values: float) -> list:
    # inf * 0 yields nan; those combinations never bound the true product.
    products = [v for v in values if not math.isnan(v)]
    if not products:
        raise EnclosureError("undefined product of enclosures")
    return products


@dataclass(frozen=True)
class Enclosure:
    """A directed pair ``[lo, hi]`` with ``lo <= hi``."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):  # also rejects nan
            raise EnclosureError(f"invalid enclosure [{self.lo!r}, {self.hi!r}]")

    # -- construction ---------------------------------------------------------
    @classmethod
    def point(cls, value: float) -> "Enclosure":
        value = float(value)
        return cls(value, value)

    @classmethod
    def around(cls, center: float, radius: float) -> "Enclosure":
        """Enclosure of ``center +- radius`` rounded outward."""
        radius = abs(float(radius))
        return cls(_down(center - radius), _up(center + radius))

    @classmethod
    def ordered(cls, a: float, b: float) -> "Enclosure":
        """Enclosure spanning two bound values given in either order."""
        return cls(min(a, b), max(a, b))

    @staticmethod
    def coerce(value: Operand) -> "Enclosure":
        if isinstance(value, Enclosure):
            return value
        if isinstance(value, (int, float)):
            return Enclosure.point(value)
        raise TypeError(f"cannot use {type(value).__name__} as an enclosure")

    # -- measures -------------------------------------------------------------
    @property
    def width(self) -> float:
        return _up(self.hi - self.lo) if self.hi > self.lo else 0.0

    @property
    def mid(self) -> float:
        return 0.5 * self.lo + 0.5 * self.hi

    @property
    def rel_width(self) -> float:
        """``(hi - lo) / max(|lo|, |hi|)``; infinite when the enclosure holds 0."""
        if self.lo == self.hi:
            return 0.0
        if self.contains_zero():
            return math.inf
        return self.width / max(abs(self.lo), abs(self.hi))

    def contains_zero(self) -> bool:
        return self.lo <= 0.0 <= self.hi

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= value <= self.hi + slack

    def is_subset(self, other: "Enclosure") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Enclosure") -> "Enclosure":
        """Intersection of two enclosures of the same quantity."""
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise EmptyIntersectionError(f"{self} and {other} are disjoint")
        return Enclosure(lo, hi)

    def hull(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(min(self.lo, other.lo), max(self.hi, other.hi))

    # -- arithmetic -----------------------------------------------------------
    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __add__(self, other: Operand) -> "Enclosure":
        other = Enclosure.coerce(other)
        return Enclosure(_down(self.lo + other.lo), _up(self.hi + other.hi))

    __radd__ = __add__

    def __sub__(self, other: Operand) -> "Enclosure":
        other = Enclosure.coerce(other)
        return Enclosure(_down(self.lo - other.hi), _up(self.hi - other.lo))

    def __rsub__(self, other: Operand) -> "Enclosure":
        return Enclosure.coerce(other) - self

    def __mul__(self, other: Operand) -> "Enclosure":
        other = Enclosure.coerce(other)
        products = _finite_products(
            self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi
        )
        return Enclosure(_down(min(products)), _up(max(products)))

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "Enclosure":
        other = Enclosure.coerce(other)
        if other.contains_zero():
            raise DivisionContainsZeroError(f"division by {other}")
        quotients = _finite_products(
            self.lo / other.lo, self.lo / other.hi, self.hi / other.lo, self.hi / other.hi
        )
        return Enclosure(_down(min(quotients)), _up(max(quotients)))

    def __rtruediv__(self, other: Operand) -> "Enclosure":
        return Enclosure.coerce(other) / self

    def reciprocal(self) -> "Enclosure":
        return 1.0 / self

    def square(self) -> "Enclosure":
        if self.lo >= 0.0:
            return Enclosure(_down(self.lo * self.lo), _up(self.hi * self.hi))
        if self.hi <= 0.0:
            return Enclosure(_down(self.hi * self.hi), _up(self.lo * self.lo))
        top = max(self.lo * self.lo, self.hi * self.hi)
        return Enclosure(0.0, _up(top))

    def sqrt(self) -> "Enclosure":
        if self.lo < 0.0:
            raise NegativeSqrtError(f"sqrt of {self}")
        lo = math.sqrt(self.lo)
        return Enclosure(max(0.0, _down(lo)) if lo > 0.0 else 0.0, _up(math.sqrt(self.hi)))

    def __str__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"


# --- functional API ------------------------------------------------------------
def enclosure_add(e1: Operand, e2: Operand) -> Enclosure:
    return Enclosure.coerce(e1) + e2


def enclosure_sub(e1: Operand, e2: Operand) -> Enclosure:
    return Enclosure.coerce(e1) - e2


def enclosure_mul(e1: Operand, e2: Operand) -> Enclosure:
    return Enclosure.coerce(e1) * e2


def enclosure_div(e1: Operand, e2: Operand) -> Enclosure:
    return Enclosure.coerce(e1) / e2


def enclosure_sqrt(e1: Operand) -> Enclosure:
    return Enclosure.coerce(e1).sqrt()


# --- generic scalar helpers ----------------------------------------------------
def sqrt(value):
    """Square root for floats, complex numbers and enclosures."""
    if isinstance(value, Enclosure):
        return value.sqrt()
    if isinstance(value, complex):
        return cmath.sqrt(value)
    if value < 0.0:
        raise NegativeSqrtError(f"sqrt of {value!r}")
    return math.sqrt(value)


def square(value):
    if isinstance(value, Enclosure):
        return value.square()
    return value * value


def acos(value):
    if isinstance(value, complex):
        return cmath.acos(value)
    return math.acos(value)


def cos(value):
    if isinstance(value, complex):
        return cmath.cos(value)
    return math.cos(value)


def sin(value):
    if isinstance(value, complex):
        return cmath.sin(value)
    return math.sin(value)


def real_part(value) -> float:
    """A real representative used for domain checks and branch choices."""
    if isinstance(value, Enclosure):
        return value.mid
    if isinstance(value, complex):
        return value.real
    return float(value)
