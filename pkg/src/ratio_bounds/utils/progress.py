"""
Live status line for ``verify`` and ``tabulate`` runs.

While the oracle works through a grid, a small rich region pinned under the
scrolling log shows which bound is being checked, the running point tally
(passed / violated / undecided) and the current pipeline stage. Log records
are re-routed through the live console so they print above the region; the
log file, if any, is not touched.

Tallies are kept even when the display is off, so the runner can use the
reporter unconditionally.
"""

import logging
import sys
import threading
import time
from dataclasses import dataclass
from typing import List, Optional

from rich.console import Console, Group
from rich.live import Live
from rich.rule import Rule
from rich.spinner import Spinner
from rich.table import Table
from rich.text import Text

from ..core.types import VerificationReport
from .logging_config import get_logger


@dataclass
class PointTally:
    passed: int = 0
    violations: int = 0
    inconclusive: int = 0

    @property
    def total(self) -> int:
        return self.passed + self.violations + self.inconclusive

    def add(self, report: VerificationReport) -> None:
        self.violations += report.num_violations
        self.inconclusive += report.num_inconclusive
        self.passed += report.num_points - report.num_violations - report.num_inconclusive


class _ConsoleRelay(logging.Handler):
    """Stand-in for the stdout handler while the live region is up."""

    def __init__(self, console: Console, original: logging.Handler):
        super().__init__(original.level)
        self.original = original
        self._console = console
        if original.formatter is not None:
            self.setFormatter(original.formatter)

    def emit(self, record: logging.LogRecord) -> None:
        try:
            # the formatter already embeds ANSI colours
            self._console.print(Text.from_ansi(self.format(record)), markup=False,
                                highlight=False, soft_wrap=False)
        except Exception:
            self.handleError(record)


class ProgressReporter:
    """Counts checked bounds and grid points; renders them while a run is live."""

    def __init__(self, enabled: bool = True, title: str = "ratio-bounds"):
        self.enabled = bool(enabled) and sys.stdout.isatty()
        self.title = title
        self.tally = PointTally()
        self.bounds_done = 0
        self.bounds_total = 0
        self.stage = ""
        self._current = ""
        self._lock = threading.RLock()
        self._start = time.monotonic()
        self._live: Optional[Live] = None
        self._spinner: Optional[Spinner] = None
        self._relays: List[_ConsoleRelay] = []

    def __enter__(self) -> "ProgressReporter":
        if self.enabled:
            try:
                self._go_live()
            except Exception:
                self.enabled = False
        return self

    def __exit__(self, exc_type, exc, tb) -> bool:
        self.stop()
        return False

    def _go_live(self) -> None:
        console = Console()
        self._spinner = Spinner("dots", style="cyan")
        self._start = time.monotonic()
        logger = get_logger()
        for handler in list(logger.handlers):
            if isinstance(handler, logging.StreamHandler) and getattr(handler, "stream", None) is sys.stdout:
                relay = _ConsoleRelay(console, handler)
                logger.removeHandler(handler)
                logger.addHandler(relay)
                self._relays.append(relay)
        self._live = Live(self, console=console, refresh_per_second=8, transient=True)
        self._live.start()

    def stop(self) -> None:
        if self._live is not None:
            try:
                self._live.stop()
            except Exception:
                pass
            self._live = None
        logger = get_logger()
        for relay in self._relays:
            logger.removeHandler(relay)
            logger.addHandler(relay.original)
        self._relays.clear()
        self.enabled = False

    # -- updates from the runner ---------------------------------------------
    def set_stage(self, num: int, total: int, name: str) -> None:
        with self._lock:
            self.stage = f"Stage {num}/{total} · {name}"

    def set_total(self, total: int) -> None:
        with self._lock:
            self.bounds_total, self.bounds_done = total, 0

    def start_bound(self, bound_id: str) -> None:
        with self._lock:
            self._current = bound_id

    def advance(self, report: VerificationReport) -> None:
        """Fold one finished bound into the running tally."""
        with self._lock:
            self.bounds_done += 1
            self.tally.add(report)
            self._current = ""

    # -- rendering -----------------------------------------------------------
    def __rich__(self):
        with self._lock:
            secs = int(time.monotonic() - self._start)
            head = Text(self.title, style="bold cyan")
            if self.bounds_total:
                head.append(f"   bound {self.bounds_done}/{self.bounds_total}", style="green")
            if self._current:
                head.append(f"  {self._current}", style="dim")
            counts = Text("   ")
            counts.append(f"{self.tally.passed} pass", style="green")
            counts.append("  ")
            counts.append(f"{self.tally.violations} violated", style="red" if self.tally.violations else "dim")
            counts.append("  ")
            counts.append(f"{self.tally.inconclusive} undecided",
                          style="yellow" if self.tally.inconclusive else "dim")
            counts.append(f"    {self.stage}    {secs // 60:02d}:{secs % 60:02d}", style="dim")

        line = Table.grid(padding=(0, 1))
        line.add_row(self._spinner, head)
        return Group(Rule(style="dim"), line, counts)
