"""
Stage-table orchestrator behind the ``verify`` and ``tabulate`` commands.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from ..analysis.catalog import CatalogEntry, get_catalog
from ..analysis.identities import bessel_consistency_suite, eta_specialization_check
from ..analysis.properties import PropertyCheck, run_property_suite
from ..analysis.verify import grid_points, summarize, verify_bound
from ..oracle.dispatch import OracleCache
from ..utils.export import export_records
from ..utils.logging_config import get_logger
from ..utils.progress import ProgressReporter
from ..utils.validators import Validators
from .config import Config, OracleConfig
from .errors import ConfigError, RatioBoundsError
from .grid import Grid, Scheme
from .types import VerificationReport

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_INCONCLUSIVE = 3
EXIT_CONFIG = 4

VERIFY_COLUMNS = ("family", "bound_id", "params", "x", "side", "bound", "oracle_lo", "oracle_hi",
                  "margin", "status", "converged", "method")
TABULATE_COLUMNS = ("family", "bound_id", "params", "x", "oracle_lo", "oracle_hi", "bound",
                    "side", "margin", "sharpness", "status")


@dataclass
class RunConfig:
    """What one ``verify`` / ``tabulate`` run does."""

    command: str = "verify"
    family: Optional[str] = None
    bound_ids: Optional[List[str]] = None
    grid_file: Optional[str] = None
    fmt: str = "csv"
    out: Optional[str] = None
    depth: Optional[int] = None
    target_width: Optional[float] = None
    workers: Optional[int] = None
    properties: bool = True


@dataclass
class RunResult:
    exit_code: int = EXIT_OK
    reports: List[VerificationReport] = field(default_factory=list)
    checks: List[PropertyCheck] = field(default_factory=list)
    summary: Dict[str, object] = field(default_factory=dict)
    output_path: Optional[str] = None


class BoundRunner:
    """Runs the Configure → Build Grid → Evaluate → Summarise → Export pipeline."""

    def __init__(self, config: RunConfig, progress: Optional[ProgressReporter] = None,
                 cache: Optional[OracleCache] = None):
        self.config = config
        self.logger = get_logger()
        self.progress = progress if progress is not None else ProgressReporter(enabled=False)
        self.cache = cache if cache is not None else OracleCache()
        self.result = RunResult()
        self.oracle_cfg: Optional[OracleConfig] = None
        self.workers = 1
        self.entries: List[CatalogEntry] = []
        self.grids: Dict[str, Grid] = {}
        self.output_path: Optional[str] = None

    def run(self) -> RunResult:
        """Run every stage; the exit code lands in ``result.exit_code``."""
        start = time.monotonic()
        try:
            ok = self._execute_pipeline()
        except ConfigError as e:
            self.logger.error(f"❌ Configuration error: {e}")
            self.result.exit_code = EXIT_CONFIG
            return self.result
        except Exception as e:
            self.logger.error("❌ A critical error occurred: %s", e, exc_info=True)
            self.result.exit_code = EXIT_CONFIG if isinstance(e, RatioBoundsError) else 1
            return self.result
        if not ok and self.result.exit_code == EXIT_OK:
            self.result.exit_code = EXIT_CONFIG
        self.logger.info(f"{Config.LOG_ICONS['note']} Finished in {time.monotonic() - start:.1f}s")
        return self.result

    def _execute_pipeline(self) -> bool:
        stages = [
            ("Configure", self._configure),
            ("Build Grid", self._build_grids),
            ("Evaluate", self._evaluate),
            ("Summarise", self._summarise),
            ("Export", self._export),
        ]
        total = len(stages)
        for num, (name, step) in enumerate(stages, 1):
            self.progress.set_stage(num, total, name)
            self.logger.info(f"[Stage {num}/{total}: {name}]")
            if not step():
                return False
        return True

    def _configure(self) -> bool:
        cfg = self.config
        if cfg.command not in ("verify", "tabulate"):
            raise ConfigError(f"unknown command {cfg.command!r}")
        self.oracle_cfg = Config.oracle_config(cfg.depth, cfg.target_width)
        self.workers = Config.get_workers(cfg.workers)
        self.entries = get_catalog().select(cfg.family, cfg.bound_ids)
        if not self.entries:
            raise ConfigError("no catalogued bound matches the filters")
        if cfg.out is not None:
            output = Validators.validate_output_path(cfg.out, cfg.fmt)
            if not output['valid']:
                raise ConfigError(output['error_message'])
            self.output_path = output['resolved_path']
        self.logger.info(f"  > {len(self.entries)} bound(s), depth {self.oracle_cfg.depth}, "
                         f"target width {self.oracle_cfg.target_rel_width:g}, {self.workers} worker(s)")
        return True

    def _build_grids(self) -> bool:
        override = None
        if self.config.grid_file is not None:
            override = Validators.validate_grid_file(self.config.grid_file)
            if not override['valid']:
                raise ConfigError(override['error_message'])
            self.logger.info(f"  > Grid file: {override['resolved_path']}")

        points = 0
        for entry in self.entries:
            grid = entry.default_grid()
            if override is not None:
                if override['params'] is not None:
                    grid = grid.with_params(override['params'])
                if override['x'] is not None:
                    grid = grid.with_x(override['x'], Scheme(override['scheme']))
            self.grids[entry.id] = grid
            count = len(grid_points(entry.descriptor, grid))
            points += count
            self.logger.debug(f"  > {entry.id}: {count} valid point(s) of {grid.size}")
        if points == 0:
            raise ConfigError("the grid has no point inside any selected bound's validity region")
        self.logger.info(f"  > {points} (bound, point) pair(s) to evaluate")
        return True

    def _evaluate(self) -> bool:
        self.progress.set_total(len(self.entries))
        for entry in self.entries:
            self.progress.start_bound(entry.id)
            report = verify_bound(entry, self.grids[entry.id], self.oracle_cfg, self.cache, self.workers)
            self.result.reports.append(report)
            self.progress.advance(report)
        if self.config.command == "verify" and self.config.properties and not self.config.bound_ids:
            family = self.config.family
            self.result.checks = run_property_suite(family, self.oracle_cfg, self.cache)
            if family in (None, "confluent"):
                self.result.checks += [bessel_consistency_suite(cfg=self.oracle_cfg, cache=self.cache),
                                       eta_specialization_check()]
        return True

    def _summarise(self) -> bool:
        reports = self.result.reports
        summary = summarize(reports)
        summary["properties"] = len(self.result.checks)
        summary["property_failures"] = sum(1 for c in self.result.checks if not c.passed)
        self.result.summary = summary

        for report in reports:
            if report.num_violations:
                icon = Config.LOG_ICONS['error']
            elif report.num_inconclusive:
                icon = Config.LOG_ICONS['warning']
            else:
                icon = Config.LOG_ICONS['success']
            self.logger.info(f"{icon} {report.descriptor_id}: {report.num_points} point(s), "
                             f"{report.num_violations} violation(s), {report.num_inconclusive} inconclusive")
            for note in report.notes:
                self.logger.debug(f"    {note}")
        for check in self.result.checks:
            icon = Config.LOG_ICONS['success'] if check.passed else Config.LOG_ICONS['error']
            self.logger.info(f"{icon} property {check.family}: {check.name} ({check.checked} checked)")
            for failure in check.failures[:5]:
                self.logger.warning(f"    {failure}")

        if summary["violations"] or summary["property_failures"]:
            self.result.exit_code = EXIT_VIOLATION
        elif summary["inconclusive"] or summary["not_converged"]:
            self.result.exit_code = EXIT_INCONCLUSIVE
        return True

    def _export(self) -> bool:
        if self.output_path is None:
            self.logger.debug("  > No output path given; skipping export")
            return True
        rows = [record.as_row() for report in self.result.reports for record in report.records]
        columns = TABULATE_COLUMNS if self.config.command == "tabulate" else VERIFY_COLUMNS
        summary = dict(self.result.summary)
        summary["reports"] = [r.summary() for r in sorted(self.result.reports, key=lambda r: r.descriptor_id)]
        summary["properties"] = [c.summary() for c in self.result.checks]
        if self.config.command == "tabulate":
            rows = [{k: row[k] for k in TABULATE_COLUMNS} for row in rows]
        self.result.output_path = export_records(rows, self.output_path, self.config.fmt, columns, summary)
        return True


def run_bounds(config: RunConfig, progress: Optional[ProgressReporter] = None,
               cache: Optional[OracleCache] = None) -> RunResult:
    return BoundRunner(config, progress, cache).run()


def exit_code_for(verdicts_ok: Sequence[bool], inconclusive: bool) -> int:
    """Exit code for commands that report per-item pass/fail plus an undecided flag."""
    if not all(verdicts_ok):
        return EXIT_VIOLATION
    if inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK
