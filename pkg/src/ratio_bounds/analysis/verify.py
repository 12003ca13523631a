"""
Bound-versus-oracle verification over a grid.

A point is decided when the enclosure of the true ratio lies entirely on the
claimed side of the bound. Bound values are plain floats, so a relative slack
of ``Config.MARGIN_REL`` absorbs formula rounding: a lower bound is violated
only when it exceeds ``oracle.hi`` by more than the slack. A bound that lands
inside the enclosure passes when the oracle converged (the two agree to
rounding) and is INCONCLUSIVE otherwise.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple, Union

from ..core.config import Config, OracleConfig
from ..core.enclosure import Enclosure
from ..core.errors import EmptyIntersectionError, NotConvergedError, RatioBoundsError
from ..core.grid import Grid
from ..core.types import (
    BoundDescriptor,
    OracleResult,
    Params,
    PointRecord,
    PointStatus,
    RatioSpec,
    Side,
    VerificationReport,
)
from ..oracle.dispatch import OracleCache
from ..utils.logging_config import bound_context, get_verify_logger
from .catalog import CatalogEntry

logger = get_verify_logger()


def _scale(bound: float, enclosure: Enclosure) -> float:
    return max(abs(bound), abs(enclosure.lo), abs(enclosure.hi), math.ulp(1.0))


def classify_point(side: Side, bound: float, enclosure: Enclosure, converged: bool,
                   margin_rel: float = Config.MARGIN_REL) -> Tuple[PointStatus, float]:
    """Decide one point; returns the status and the signed relative margin.

    The margin is positive when the bound lies strictly on its claimed side of
    the whole enclosure.
    """
    if not math.isfinite(bound):
        return PointStatus.VIOLATION, -math.inf
    scale = _scale(bound, enclosure)
    slack = margin_rel * scale

    if side is Side.LOWER:
        margin = (enclosure.lo - bound) / scale
        if bound < enclosure.lo:
            return PointStatus.PASS, margin
        if bound > enclosure.hi + slack:
            return PointStatus.VIOLATION, margin
    elif side is Side.UPPER:
        margin = (bound - enclosure.hi) / scale
        if bound > enclosure.hi:
            return PointStatus.PASS, margin
        if bound < enclosure.lo - slack:
            return PointStatus.VIOLATION, margin
    else:
        margin = -abs(bound - enclosure.mid) / scale
        if enclosure.lo - slack <= bound <= enclosure.hi + slack:
            return PointStatus.PASS, margin
        return PointStatus.VIOLATION, margin

    return (PointStatus.PASS if converged else PointStatus.INCONCLUSIVE), margin


def _descriptor(target: Union[BoundDescriptor, CatalogEntry]) -> BoundDescriptor:
    return target.descriptor if isinstance(target, CatalogEntry) else target


def _undecided(descriptor: BoundDescriptor, params: Params, x: float, side: Side,
               bound: float, method: str) -> PointRecord:
    return PointRecord(descriptor.id, descriptor.family, params, x, side, bound,
                       math.nan, math.nan, math.nan, PointStatus.INCONCLUSIVE, False, method)


def evaluate_point(descriptor: BoundDescriptor, params: Params, x: float, cfg: OracleConfig,
                   cache: OracleCache) -> PointRecord:
    """Compare one bound value with the oracle at one grid point."""
    side = descriptor.side_for(params)
    try:
        bound = float(descriptor.evaluate(params, x))
    except RatioBoundsError as exc:
        logger.debug(f"{descriptor.id} at {params}, x={x}: bound failed ({exc.code}: {exc})")
        return _undecided(descriptor, params, x, side, math.nan, f"bound-error:{exc.code}")

    try:
        result: OracleResult = cache.evaluate(RatioSpec(descriptor.kind, params, x), cfg)
    except NotConvergedError as exc:
        if exc.result is None:
            return _undecided(descriptor, params, x, side, bound, "no-enclosure")
        result = exc.result
    except EmptyIntersectionError as exc:
        logger.error(f"{descriptor.id} at {params}, x={x}: oracle methods disagree ({exc})")
        return _undecided(descriptor, params, x, side, bound, "oracle-disagreement")

    enclosure = result.enclosure
    status, margin = classify_point(side, bound, enclosure, result.converged)
    if status is not PointStatus.PASS:
        logger.debug(f"{descriptor.id} at {params}, x={x}: {status.value} bound={bound!r} oracle={enclosure}")
    return PointRecord(descriptor.id, descriptor.family, params, x, side, bound,
                       enclosure.lo, enclosure.hi, margin, status, result.converged, result.method)


def grid_points(descriptor: BoundDescriptor, grid: Grid) -> List[Tuple[Params, float]]:
    """Grid points inside both the bound's validity region and the ratio's domain."""
    return grid.restrict(descriptor.applies)


def verify_bound(target: Union[BoundDescriptor, CatalogEntry], grid: Optional[Grid] = None,
                 cfg: Optional[OracleConfig] = None, cache: Optional[OracleCache] = None,
                 workers: int = 1) -> VerificationReport:
    """Check one bound on every valid grid point.

    Args:
        target: A catalog entry or a bare descriptor (then ``grid`` is required)
        grid: Overrides the entry's default grid
        workers: Grid points evaluated concurrently by this many threads

    Returns:
        VerificationReport with records sorted by (params, x)
    """
    descriptor = _descriptor(target)
    if grid is None:
        if not isinstance(target, CatalogEntry):
            raise ValueError("a bare descriptor needs an explicit grid")
        grid = target.default_grid()
    cfg = cfg if cfg is not None else Config.oracle_config()
    cache = cache if cache is not None else OracleCache()

    report = VerificationReport(descriptor.id, grid.summary())
    points = grid_points(descriptor, grid)
    if not points:
        report.notes.append("no grid point satisfies the validity region")
        logger.warning(f"⚠️ {descriptor.id}: no grid point satisfies the validity region")
        return report

    def run(point: Tuple[Params, float]) -> PointRecord:
        with bound_context(descriptor.id):
            return evaluate_point(descriptor, point[0], point[1], cfg, cache)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run, points))
    else:
        records = [run(point) for point in points]

    for record in sorted(records, key=lambda r: (r.params, r.x)):
        report.add(record)

    touching = sum(1 for r in report.records
                   if descriptor.strict and r.status is PointStatus.PASS and r.margin <= 0.0)
    if touching:
        report.notes.append(f"{touching} point(s) agree with the oracle to rounding")
    errors = sorted({r.method for r in report.records if r.method.startswith("bound-error:")})
    if errors:
        report.notes.append(f"bound evaluation failed inside the validity region: {', '.join(errors)}")
    return report


def summarize(reports: Sequence[VerificationReport]) -> dict:
    return {
        "bounds": len(reports),
        "points": sum(r.num_points for r in reports),
        "violations": sum(r.num_violations for r in reports),
        "inconclusive": sum(r.num_inconclusive for r in reports),
        "not_converged": sum(r.num_not_converged for r in reports),
        "passed": all(r.passed for r in reports),
    }
