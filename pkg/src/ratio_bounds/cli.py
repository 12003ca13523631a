#!/usr/bin/env python3
"""
ratio-bounds - CLI logic.
"""

import sys
from typing import List, Optional

import typer
from rich.console import Console
from rich.table import Table

from ratio_bounds import __version__
from ratio_bounds.analysis.accuracy import certify_accuracy_table
from ratio_bounds.analysis.conjecture import explore
from ratio_bounds.analysis.identities import product_constant_exploration
from ratio_bounds.analysis.riccati import Verdict, get_registry, run_instances
from ratio_bounds.core.config import Config
from ratio_bounds.core.errors import ConfigError
from ratio_bounds.core.runner import (
    EXIT_CONFIG,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_VIOLATION,
    RunConfig,
    exit_code_for,
    run_bounds,
)
from ratio_bounds.oracle.dispatch import OracleCache
from ratio_bounds.utils.export import export_records
from ratio_bounds.utils.logging_config import get_logger, setup_logging
from ratio_bounds.utils.progress import ProgressReporter
from ratio_bounds.utils.validators import Validators

app = typer.Typer(
    help=f"""
ratio-bounds v{__version__} - Verify bounds for ratios of special functions against rigorous enclosures

Examples:
  ratio-bounds verify --family bessel
  ratio-bounds verify --bound pcf.b03 --format json --out b03.json
  ratio-bounds tabulate --bound bessel.I.table1.(2,1) --grid-file nu1.json --out sweep.csv
  ratio-bounds accuracy --family confluent
  ratio-bounds riccati --instance newbp
  ratio-bounds conjecture --n 1 --kmax 4

Exit codes:
  0  everything in scope passed
  2  a bound was violated, a mutation was not rejected or an accuracy tag did not match
  3  some point or fit could not be decided (oracle not converged or too wide)
  4  configuration error (unknown id, empty grid, malformed grid file)
    """,
    no_args_is_help=True,
)


def version_callback(value: bool):
    if value:
        typer.echo(f"ratio-bounds v{__version__}")
        raise typer.Exit()


@app.callback()
def main_options(
    version: bool = typer.Option(False, "--version", callback=version_callback, is_eager=True,
                                 help="Show version and exit"),
):
    """Bounds for contiguous ratios of special functions, checked against rigorous enclosures."""


def _banner(logger, title: str) -> None:
    logger.info("=" * 60)
    logger.info(f"ratio-bounds v{__version__} - {title}")
    logger.info("=" * 60)


def _print_table(title: str, columns: List[str], rows: List[List[str]]) -> None:
    table = Table(title=title, show_lines=False)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*row)
    Console().print(table)


def _check_output(out: Optional[str], fmt: str) -> Optional[str]:
    if out is None:
        return None
    result = Validators.validate_output_path(out, fmt)
    if not result['valid']:
        raise ConfigError(result['error_message'])
    return result['resolved_path']


@app.command("verify")
def verify(
    family: Optional[str] = typer.Option(None, "--family", help="pcf, bessel, confluent or gauss"),
    bound: Optional[List[str]] = typer.Option(None, "--bound", help="Bound id (repeatable)"),
    grid_file: Optional[str] = typer.Option(None, "--grid-file", help="JSON grid overriding the defaults"),
    fmt: str = typer.Option("csv", "--format", help="Output format: csv or json"),
    out: Optional[str] = typer.Option(None, "--out", help="Write per-point records here"),
    depth: Optional[int] = typer.Option(None, "--depth", help="Initial oracle recurrence depth"),
    target_width: Optional[float] = typer.Option(None, "--target-width", help="Target relative enclosure width"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Grid points evaluated concurrently"),
    verbose: bool = typer.Option(False, "-v", "--verbose", "--debug", help="Enable verbose logging (DEBUG level)"),
    log_file: Optional[str] = typer.Option(None, help="Log to file in addition to console"),
    no_progress: bool = typer.Option(False, "--no-progress", help="Disable the live progress indicator"),
):
    """Check catalogued bounds against oracle enclosures on their grids."""
    setup_logging(log_file=log_file, verbose=verbose)
    logger = get_logger()
    _banner(logger, "Verifying bounds")
    config = RunConfig("verify", family, list(bound) if bound else None, grid_file, fmt, out,
                       depth, target_width, workers)
    raise typer.Exit(handle_bounds(config, logger, show_progress=not no_progress))


@app.command("tabulate")
def tabulate(
    family: Optional[str] = typer.Option(None, "--family", help="pcf, bessel, confluent or gauss"),
    bound: Optional[List[str]] = typer.Option(None, "--bound", help="Bound id (repeatable)"),
    grid_file: Optional[str] = typer.Option(None, "--grid-file", help="JSON grid overriding the defaults"),
    fmt: str = typer.Option("csv", "--format", help="Output format: csv or json"),
    out: Optional[str] = typer.Option(None, "--out", help="Write the table here"),
    depth: Optional[int] = typer.Option(None, "--depth", help="Initial oracle recurrence depth"),
    target_width: Optional[float] = typer.Option(None, "--target-width", help="Target relative enclosure width"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Grid points evaluated concurrently"),
    verbose: bool = typer.Option(False, "-v", "--verbose", "--debug", help="Enable verbose logging (DEBUG level)"),
    log_file: Optional[str] = typer.Option(None, help="Log to file in addition to console"),
    no_progress: bool = typer.Option(False, "--no-progress", help="Disable the live progress indicator"),
):
    """Tabulate bound values, oracle enclosures, margins and sharpness per point."""
    setup_logging(log_file=log_file, verbose=verbose)
    logger = get_logger()
    _banner(logger, "Tabulating bounds")
    config = RunConfig("tabulate", family, list(bound) if bound else None, grid_file, fmt, out,
                       depth, target_width, workers, properties=False)
    raise typer.Exit(handle_bounds(config, logger, show_progress=not no_progress))


@app.command("accuracy")
def accuracy(
    family: Optional[str] = typer.Option(None, "--family", help="pcf, bessel, confluent or gauss"),
    bound: Optional[List[str]] = typer.Option(None, "--bound", help="Bound id (repeatable)"),
    include_uncertified: bool = typer.Option(False, "--include-uncertified",
                                             help="Also fit tags that are recorded but not claimed"),
    fmt: str = typer.Option("csv", "--format", help="Output format: csv or json"),
    out: Optional[str] = typer.Option(None, "--out", help="Write the tag table here"),
    depth: Optional[int] = typer.Option(None, "--depth", help="Initial oracle recurrence depth"),
    target_width: Optional[float] = typer.Option(None, "--target-width", help="Target relative enclosure width"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Fits run concurrently"),
    verbose: bool = typer.Option(False, "-v", "--verbose", "--debug", help="Enable verbose logging (DEBUG level)"),
    log_file: Optional[str] = typer.Option(None, help="Log to file in addition to console"),
):
    """Certify (m, n) accuracy tags by log-log order fits at both ends."""
    setup_logging(log_file=log_file, verbose=verbose)
    logger = get_logger()
    _banner(logger, "Certifying accuracy tags")
    raise typer.Exit(handle_accuracy(family, list(bound) if bound else None, include_uncertified, fmt, out,
                                     depth, target_width, workers, logger))


@app.command("riccati")
def riccati(
    instance: Optional[str] = typer.Option(None, "--instance", help="Instance id or alias (default: all)"),
    family: Optional[str] = typer.Option(None, "--family", help="pcf, bessel, confluent or gauss"),
    fmt: str = typer.Option("csv", "--format", help="Output format: csv or json"),
    out: Optional[str] = typer.Option(None, "--out", help="Write the verdict table here"),
    verbose: bool = typer.Option(False, "-v", "--verbose", "--debug", help="Enable verbose logging (DEBUG level)"),
    log_file: Optional[str] = typer.Option(None, help="Log to file in addition to console"),
):
    """Run nullcline and residual-sign certifications, mutations included."""
    setup_logging(log_file=log_file, verbose=verbose)
    logger = get_logger()
    _banner(logger, "Riccati certification")
    raise typer.Exit(handle_riccati(instance, family, fmt, out, logger))


@app.command("conjecture")
def conjecture(
    n: Optional[List[float]] = typer.Option(None, "--n", help="PCF order n > 1/2 (repeatable)"),
    kmax: int = typer.Option(Config.CONJECTURE_KMAX, "--kmax", help="Highest tower level"),
    grid_file: Optional[str] = typer.Option(None, "--grid-file", help="JSON grid; only its x samples are used"),
    fmt: str = typer.Option("csv", "--format", help="Output format: csv or json"),
    out: Optional[str] = typer.Option(None, "--out", help="Write the tower table here"),
    depth: Optional[int] = typer.Option(None, "--depth", help="Initial oracle recurrence depth"),
    target_width: Optional[float] = typer.Option(None, "--target-width", help="Target relative enclosure width"),
    product: bool = typer.Option(True, "--product/--no-product", help="Also explore the I*K product constant"),
    verbose: bool = typer.Option(False, "-v", "--verbose", "--debug", help="Enable verbose logging (DEBUG level)"),
    log_file: Optional[str] = typer.Option(None, help="Log to file in addition to console"),
):
    """Explore the double-ratio tower R^[k]_n(x); prints observations, not proofs."""
    setup_logging(log_file=log_file, verbose=verbose)
    logger = get_logger()
    _banner(logger, "Double-ratio exploration")
    raise typer.Exit(handle_conjecture(list(n) if n else None, kmax, grid_file, fmt, out,
                                       depth, target_width, logger, product))


def main():
    app()


def handle_bounds(config: RunConfig, logger, show_progress: bool = True) -> int:
    """Run verify/tabulate through the stage pipeline."""
    logger.info(f"Mode: {config.command}")
    with ProgressReporter(enabled=show_progress, title=f"ratio-bounds {config.command}") as progress:
        result = run_bounds(config, progress)

    summary = result.summary
    if result.exit_code == EXIT_CONFIG or not summary:
        return result.exit_code
    logger.info("=" * 60)
    icon = Config.LOG_ICONS['success'] if result.exit_code == EXIT_OK else Config.LOG_ICONS['error']
    logger.info(f"{icon} {summary['bounds']} bound(s), {summary['points']} point(s): "
                f"{summary['violations']} violation(s), {summary['inconclusive']} inconclusive, "
                f"{summary['property_failures']} failed property check(s)")
    if result.output_path:
        logger.info(f"{Config.LOG_ICONS['package']} Output: {result.output_path}")
    logger.info("=" * 60)
    return result.exit_code


def handle_accuracy(family, bound_ids, include_uncertified, fmt, out, depth, target_width, workers, logger) -> int:
    try:
        output_path = _check_output(out, fmt)
        cfg = Config.oracle_config(depth, target_width)
        report = certify_accuracy_table(family, bound_ids, cfg, OracleCache(), Config.get_workers(workers),
                                        include_uncertified)
    except ConfigError as e:
        logger.error(f"❌ Configuration error: {e}")
        return EXIT_CONFIG

    rows = []
    for tag in report.tags:
        exponent = "-" if tag.fit is None else f"{tag.fit.exponent:.3f}"
        rows.append([tag.bound_id, str(tag.tag), tag.side.value, exponent, str(list(tag.allowed)),
                     tag.status.value if tag.blocking else f"{tag.status.value} (info)"])
    _print_table("Accuracy tags", ["bound", "tag", "end", "fit", "allowed", "status"], rows)
    for check in report.coefficients:
        icon = Config.LOG_ICONS['success'] if check.passed else Config.LOG_ICONS['error']
        logger.info(f"{icon} {check.name}: observed {check.observed:.6g}, expected {check.expected:.6g}")

    if output_path is not None:
        records = [dict(t.as_row(), family=_family_of(t.bound_id)) for t in report.tags]
        export_records(records, output_path, fmt, summary=dict(
            report.summary(), coefficients=[c.as_row() for c in report.coefficients]))

    summary = report.summary()
    logger.info(f"Tags: {summary['matches']}/{summary['tags']} MATCH, {summary['mismatches']} MISMATCH, "
                f"{summary['unfit']} UNFIT, {summary['coefficient_failures']} coefficient failure(s)")
    if report.mismatches or summary['coefficient_failures']:
        return EXIT_VIOLATION
    if report.unfit:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _family_of(bound_id: str) -> str:
    return bound_id.split(".", 1)[0]


def handle_riccati(instance_id, family, fmt, out, logger) -> int:
    try:
        output_path = _check_output(out, fmt)
        instances = get_registry().select(family, instance_id)
    except ConfigError as e:
        logger.error(f"❌ Configuration error: {e}")
        return EXIT_CONFIG

    results = run_instances(instances)
    rows, records = [], []
    violation = inconclusive = False
    for instance, report in results:
        ok = instance.outcome_ok(report)
        rows.append([instance.id, report.verdict.value, instance.expected.value,
                     "-" if report.side is None else report.side.value,
                     Config.LOG_ICONS['success'] if ok else Config.LOG_ICONS['error']])
        records.append(dict(report.summary(), family=instance.family, id=instance.id,
                            expected=instance.expected.value, ok=ok))
        if not ok:
            # an undecided mutation still counts as not rejected
            if report.verdict is Verdict.INCONCLUSIVE and instance.expected is Verdict.PASS:
                inconclusive = True
            else:
                violation = True
    _print_table("Riccati certification", ["instance", "verdict", "expected", "side", ""], rows)

    if output_path is not None:
        columns = ("family", "id", "verdict", "expected", "ok", "side", "checked", "min_margin", "worst_x")
        export_records(records, output_path, fmt, columns=columns,
                       summary={"instances": len(records), "ok": sum(1 for r in records if r["ok"])})
    passed = sum(1 for instance, report in results if instance.outcome_ok(report))
    logger.info(f"{Config.LOG_ICONS['target']} {passed}/{len(results)} instance(s) gave the expected verdict")
    return exit_code_for([not violation], inconclusive)


def handle_conjecture(n_values, kmax, grid_file, fmt, out, depth, target_width, logger,
                      product: bool = True) -> int:
    try:
        output_path = _check_output(out, fmt)
        cfg = Config.oracle_config(depth, target_width)
        xs = None
        if grid_file is not None:
            grid = Validators.validate_grid_file(grid_file)
            if not grid['valid']:
                raise ConfigError(grid['error_message'])
            xs = grid['x']
        cache = OracleCache()
        towers = explore(n_values, kmax, xs, cfg, cache)
        exploration = product_constant_exploration(cfg=cfg, cache=cache) if product else None
    except ConfigError as e:
        logger.error(f"❌ Configuration error: {e}")
        return EXIT_CONFIG

    rows = []
    for n, tower in towers.items():
        for level in tower.levels:
            for o in level.observations:
                rows.append([f"{n:g}", str(level.k), o.name, "yes" if o.holds else "no",
                             f"{o.undecided}/{o.checked}"])
    _print_table("Double-ratio observations (numerical, not proofs)",
                 ["n", "k", "property", "observed", "undecided"], rows)

    if exploration is not None:
        p = exploration.summary()
        _print_table("I*K product constant (oracle midpoints, reported only)",
                     ["quantity", "value", "at (nu, x)"],
                     [["min 4(IK)^2(x^2+nu^2) - 1", f"{p['min_quantity']:.6g}", str(tuple(p["min_at"]))],
                      ["implied constant", f"{p['max_constant']:.6g}", str(tuple(p["max_constant_at"]))],
                      ["below the proven constant", "yes" if p["proven_constant_holds"] else "no", ""],
                      ["below the conjectured constant", "yes" if p["conjectured_constant_observed"] else "no", ""]])

    if output_path is not None:
        records = [row for tower in towers.values() for row in tower.rows()]
        export_records(records, output_path, fmt, columns=("n", "k", "x", "lo", "hi", "mid", "width"),
                       summary={"towers": [t.summary() for t in towers.values()],
                                "product": exploration.summary() if exploration is not None else None},
                       sort=False)
    observed = all(t.all_observed for t in towers.values())
    icon = Config.LOG_ICONS['success'] if observed else Config.LOG_ICONS['warning']
    logger.info(f"{icon} All flags observed on this grid: {observed}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
