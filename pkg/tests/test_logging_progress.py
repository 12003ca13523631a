import logging

from ratio_bounds.core.types import PointRecord, PointStatus, Side, VerificationReport
from ratio_bounds.utils.logging_config import (
    ColoredFormatter,
    bound_context,
    get_logger,
    get_verify_logger,
    setup_logging,
)
from ratio_bounds.utils.progress import PointTally, ProgressReporter


def _record(message="checked"):
    return logging.LogRecord("ratio_bounds.verify", logging.DEBUG, __file__, 1, message, None, None)


class TestLogging:
    def test_verbose_format_names_the_bound(self):
        formatter = ColoredFormatter(verbose=True)
        with bound_context("pcf.b21"):
            line = formatter.format(_record())
        assert "[ratio_bounds.verify|pcf.b21] checked" in line
        assert "DEBUG" in line

    def test_context_is_restored(self):
        formatter = ColoredFormatter(verbose=True)
        with bound_context("outer"):
            with bound_context("inner"):
                pass
            assert "|outer]" in formatter.format(_record())
        assert "|-]" in formatter.format(_record())

    def test_plain_format_hides_detail(self):
        line = ColoredFormatter().format(_record())
        assert line.endswith(": checked")
        assert "ratio_bounds.verify" not in line

    def test_file_log_carries_bound_id(self, tmp_path):
        path = tmp_path / "run.log"
        setup_logging(log_file=str(path))
        try:
            with bound_context("bessel.I.trig"):
                get_verify_logger().debug("point undecided")
        finally:
            setup_logging()
        text = path.read_text(encoding="utf-8")
        assert "[bessel.I.trig]" in text
        assert "point undecided" in text

    def test_setup_replaces_handlers(self, tmp_path):
        setup_logging(log_file=str(tmp_path / "a.log"))
        setup_logging()
        handlers = get_logger().handlers
        assert len(handlers) == 1
        assert not isinstance(handlers[0], logging.FileHandler)


def _report(statuses):
    report = VerificationReport("pcf.b21", {})
    for i, status in enumerate(statuses):
        report.add(PointRecord("pcf.b21", "pcf", (1.0,), float(i), Side.LOWER, 0.5, 0.6, 0.7, 0.1,
                               status, True, "backward"))
    return report


class TestProgress:
    def test_tally(self):
        tally = PointTally()
        tally.add(_report([PointStatus.PASS, PointStatus.VIOLATION, PointStatus.INCONCLUSIVE, PointStatus.PASS]))
        assert (tally.passed, tally.violations, tally.inconclusive, tally.total) == (2, 1, 1, 4)

    def test_disabled_reporter_still_counts(self):
        with ProgressReporter(enabled=False) as progress:
            progress.set_total(2)
            progress.start_bound("pcf.b21")
            progress.advance(_report([PointStatus.PASS]))
            progress.advance(_report([PointStatus.VIOLATION]))
        assert progress.bounds_done == 2
        assert progress.tally.violations == 1
        assert not progress.enabled
