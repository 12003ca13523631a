"""
Sampling grids over (parameters, x) and the per-family defaults.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Callable, Iterator, Sequence, Tuple

import numpy as np

from .errors import ConfigError
from .types import Params


class Scheme(str, Enum):
    LINEAR = "linear"
    LOG = "log"
    MIXED = "mixed"


def linear_points(lo: float, hi: float, count: int) -> np.ndarray:
    return np.linspace(lo, hi, count)


def log_points(lo: float, hi: float, count: int) -> np.ndarray:
    if lo <= 0.0 or hi <= 0.0:
        raise ConfigError(f"log spacing needs positive end points, got [{lo}, {hi}]")
    return np.logspace(np.log10(lo), np.log10(hi), count)


def merge_points(*parts: np.ndarray) -> Tuple[float, ...]:
    """Sorted union of several samplings with duplicates removed."""
    merged = np.unique(np.concatenate([np.asarray(p, dtype=float) for p in parts]))
    return tuple(float(v) for v in merged)


@dataclass(frozen=True)
class Grid:
    """Cartesian product of parameter tuples and x samples."""

    params: Tuple[Params, ...]
    x: Tuple[float, ...]
    scheme: Scheme = Scheme.MIXED

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(tuple(float(v) for v in p) for p in self.params))
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))

    @property
    def size(self) -> int:
        return len(self.params) * len(self.x)

    def points(self) -> Iterator[Tuple[Params, float]]:
        return iter(product(self.params, self.x))

    def restrict(self, keep: Callable[[Params, float], bool]) -> list:
        """Points of the grid accepted by ``keep``."""
        return [(p, x) for p, x in self.points() if keep(p, x)]

    def with_params(self, params: Sequence[Params]) -> "Grid":
        return Grid(tuple(params), self.x, self.scheme)

    def with_x(self, x: Sequence[float], scheme: Scheme = Scheme.LINEAR) -> "Grid":
        return Grid(self.params, tuple(x), scheme)

    def summary(self) -> dict:
        return {
            "params": [list(p) for p in self.params],
            "x_min": min(self.x) if self.x else None,
            "x_max": max(self.x) if self.x else None,
            "x_count": len(self.x),
            "scheme": self.scheme.value,
        }


# --- defaults ------------------------------------------------------------------
def default_pcf_grid() -> Grid:
    positive = log_points(1e-3, 40.0, 100)
    x = merge_points(linear_points(-40.0, 40.0, 200), positive, -positive)
    params = tuple((n,) for n in (0.51, 0.6, 1.0, 2.0, 5.0, 10.0, 25.0))
    return Grid(params, x, Scheme.MIXED)


def default_bessel_grid() -> Grid:
    x = merge_points(log_points(1e-2, 1.0, 100), linear_points(1.0, 50.0, 200))
    params = tuple((nu,) for nu in (0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.5, 5.0, 10.0, 25.0))
    return Grid(params, x, Scheme.MIXED)


def default_product_grid() -> Grid:
    x = merge_points(log_points(1e-2, 1.0, 50), linear_points(1.0, 50.0, 100))
    params = tuple((nu,) for nu in (0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0))
    return Grid(params, x, Scheme.MIXED)


def default_kummer_grid() -> Grid:
    x = merge_points(log_points(1e-3, 1.0, 60), linear_points(1.0, 30.0, 140))
    values = (0.3, 1.0, 2.0, 5.0)
    return Grid(tuple(product(values, values)), x, Scheme.MIXED)


def default_gauss_grid() -> Grid:
    x = merge_points(linear_points(0.01, 0.99, 99), log_points(1e-4, 1e-2, 10))
    values = (0.5, 1.0, 2.0, 5.0)
    return Grid(tuple(product(values, values, values)), x, Scheme.MIXED)


DEFAULT_GRIDS = {
    "pcf": default_pcf_grid,
    "bessel": default_bessel_grid,
    "bessel_product": default_product_grid,
    "confluent": default_kummer_grid,
    "gauss": default_gauss_grid,
}


def lambda_grid(lo: float, hi: float, count: int) -> Tuple[float, ...]:
    """Evenly spaced parameter values with both end points included."""
    return tuple(float(v) for v in np.linspace(lo, hi, count))
