"""
Numerical exploration of the PCF double-ratio tower.

R^[1]_n(x) = Phi_n(x) and R^[k+1]_n(x) = R^[k]_n(x) / R^[k]_{n+1}(x), so the
k-th level at order n needs Phi at n, n+1, ..., n+k-1. Every entry is an
enclosure built by interval division of oracle enclosures; the flags below
are observations on a finite grid. A flag is only counted as broken where the
enclosures decide it, and undecided entries are counted separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from ..core.config import Config, OracleConfig
from ..core.enclosure import Enclosure
from ..core.errors import ConfigError, NotConvergedError, RatioBoundsError
from ..core.grid import linear_points
from ..core.types import RatioKind, RatioSpec
from ..oracle.dispatch import OracleCache
from ..utils.logging_config import get_analysis_logger

logger = get_analysis_logger()

RIGHT_END_TOLERANCE = 1e-2


@dataclass
class Observation:
    """Outcome of one observed property on one tower level."""

    name: str
    holds: bool = True
    violations: List[str] = field(default_factory=list)
    undecided: int = 0
    checked: int = 0

    def record(self, broken: bool, undecided: bool, where: str) -> None:
        self.checked += 1
        if broken:
            self.holds = False
            self.violations.append(where)
        elif undecided:
            self.undecided += 1

    def summary(self) -> dict:
        return {
            "name": self.name,
            "observed": self.holds,
            "checked": self.checked,
            "undecided": self.undecided,
            "violations": list(self.violations[:20]),
        }


@dataclass
class TowerLevel:
    k: int
    values: List[Optional[Enclosure]]
    observations: List[Observation] = field(default_factory=list)

    def observation(self, name: str) -> Optional[Observation]:
        return next((o for o in self.observations if o.name == name), None)


@dataclass
class DoubleRatioTower:
    n: float
    xs: List[float]
    levels: List[TowerLevel]
    notes: List[str] = field(default_factory=list)

    @property
    def k_max(self) -> int:
        return len(self.levels)

    def level(self, k: int) -> TowerLevel:
        return self.levels[k - 1]

    @property
    def all_observed(self) -> bool:
        return all(o.holds for level in self.levels for o in level.observations)

    def rows(self) -> List[dict]:
        """Flat records sorted by (k, x), one per table entry."""
        rows = []
        for level in self.levels:
            for x, value in zip(self.xs, level.values):
                rows.append({
                    "n": self.n,
                    "k": level.k,
                    "x": x,
                    "lo": value.lo if value is not None else float("nan"),
                    "hi": value.hi if value is not None else float("nan"),
                    "mid": value.mid if value is not None else float("nan"),
                    "width": value.width if value is not None else float("nan"),
                })
        return rows

    def summary(self) -> dict:
        return {
            "n": self.n,
            "k_max": self.k_max,
            "points": len(self.xs),
            "all_observed": self.all_observed,
            "levels": {level.k: [o.summary() for o in level.observations] for level in self.levels},
            "notes": list(self.notes),
        }


def default_x_grid() -> List[float]:
    lo, hi, count = Config.CONJECTURE_X_RANGE
    return [float(x) for x in linear_points(lo, hi, count)]


def _phi(n: float, x: float, cfg: OracleConfig, cache: OracleCache) -> Optional[Enclosure]:
    try:
        return cache.evaluate(RatioSpec(RatioKind.PCF, (n,), x), cfg).enclosure
    except NotConvergedError as exc:
        return None if exc.result is None else exc.result.enclosure
    except RatioBoundsError as exc:
        logger.debug(f"Phi_{n}({x}): no enclosure ({exc.code})")
        return None


def _divide(num: Optional[Enclosure], den: Optional[Enclosure]) -> Optional[Enclosure]:
    if num is None or den is None or den.contains_zero():
        return None
    return num / den


def _observe_level(level: TowerLevel, previous: Optional[TowerLevel], xs: Sequence[float]) -> None:
    positive = Observation("positive")
    increasing = Observation("increasing in x")
    for x, value in zip(xs, level.values):
        if value is None:
            positive.undecided += 1
            continue
        positive.record(value.hi <= 0.0, value.lo <= 0.0, f"x={x:.6g}")
    for (x0, v0), (x1, v1) in zip(zip(xs, level.values), zip(xs[1:], level.values[1:])):
        if v0 is None or v1 is None:
            increasing.undecided += 1
            continue
        increasing.record(v1.hi < v0.lo, v1.lo <= v0.hi, f"[{x0:.6g}, {x1:.6g}]")
    level.observations.extend([positive, increasing])

    if level.k >= 2:
        below_one = Observation("below one")
        for x, value in zip(xs, level.values):
            if value is None:
                below_one.undecided += 1
                continue
            below_one.record(value.lo >= 1.0, value.hi >= 1.0, f"x={x:.6g}")
        level.observations.append(below_one)

        approaches = Observation("approaches one at the right end")
        last = level.values[-1] if level.values else None
        if last is None:
            approaches.undecided += 1
        else:
            approaches.record(abs(1.0 - last.mid) > RIGHT_END_TOLERANCE, False, f"x={xs[-1]:.6g}")
        level.observations.append(approaches)

    # the ordering is only claimed from the second level on; R[1] grows like x
    if previous is not None and previous.k >= 2:
        ordering = Observation(f"R[{level.k}] > R[{previous.k}]")
        for x, upper, lower in zip(xs, level.values, previous.values):
            if upper is None or lower is None:
                ordering.undecided += 1
                continue
            ordering.record(upper.hi < lower.lo, upper.lo <= lower.hi, f"x={x:.6g}")
        level.observations.append(ordering)


def double_ratio_tower(n: float, k_max: int, x_grid: Optional[Sequence[float]] = None,
                       cfg: Optional[OracleConfig] = None,
                       cache: Optional[OracleCache] = None) -> DoubleRatioTower:
    """Tabulate R^[k]_n(x) for k = 1..k_max with enclosure-propagated uncertainty.

    Args:
        n: PCF order, n > 1/2
        k_max: Highest level, >= 1
        x_grid: Sample abscissae; defaults to ``Config.CONJECTURE_X_RANGE``

    Raises:
        ConfigError: On n <= 1/2 or k_max < 1
    """
    if not n > 0.5:
        raise ConfigError(f"the double-ratio tower needs n > 1/2, got n={n}")
    if k_max < 1:
        raise ConfigError(f"k_max must be >= 1, got {k_max}")
    xs = sorted(float(x) for x in (x_grid if x_grid is not None else default_x_grid()))
    cfg = cfg if cfg is not None else Config.oracle_config()
    cache = cache if cache is not None else OracleCache()

    # row j of the working table holds R^[k] at order n + j
    table = [[_phi(n + j, x, cfg, cache) for x in xs] for j in range(k_max)]
    tower = DoubleRatioTower(n, xs, [])
    previous: Optional[TowerLevel] = None
    for k in range(1, k_max + 1):
        level = TowerLevel(k, list(table[0]))
        _observe_level(level, previous, xs)
        tower.levels.append(level)
        previous = level
        table = [[_divide(a, b) for a, b in zip(table[j], table[j + 1])] for j in range(len(table) - 1)]

    missing = sum(1 for level in tower.levels for value in level.values if value is None)
    if missing:
        tower.notes.append(f"{missing} entr(ies) without an enclosure")
    for level in tower.levels:
        for o in level.observations:
            icon = Config.LOG_ICONS['success'] if o.holds else Config.LOG_ICONS['warning']
            logger.info(f"{icon} n={n} R[{level.k}] {o.name}: observed={o.holds} "
                        f"(undecided {o.undecided}/{o.checked})")
    return tower


def explore(n_values: Optional[Sequence[float]] = None, k_max: Optional[int] = None,
            x_grid: Optional[Sequence[float]] = None, cfg: Optional[OracleConfig] = None,
            cache: Optional[OracleCache] = None) -> Dict[float, DoubleRatioTower]:
    """Towers for several orders sharing one oracle cache."""
    n_values = tuple(n_values) if n_values else Config.CONJECTURE_N
    k_max = k_max if k_max is not None else Config.CONJECTURE_KMAX
    cache = cache if cache is not None else OracleCache()
    return {n: double_ratio_tower(n, k_max, x_grid, cfg, cache) for n in n_values}
