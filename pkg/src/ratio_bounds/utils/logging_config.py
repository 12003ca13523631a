"""
Logging for ratio-bounds.

Everything logs under the ``ratio_bounds`` tree: library modules at DEBUG
(depth escalation, oracle fallbacks, undecided points), the command layer at
INFO (stage headers and result lines). While a bound is being verified its id
is attached to every record, so a DEBUG trace from the oracle says which bound
asked for the enclosure; grid points run on worker threads keep the id too.
"""

import logging
import sys
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator, Optional

LOGGER_NAME = "ratio_bounds"
FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - [%(bound)s] %(filename)s:%(lineno)d - %(funcName)s() - %(message)s"

_active_bound: ContextVar[str] = ContextVar("ratio_bounds_active_bound", default="-")

_LEVEL_COLOURS = {
    logging.DEBUG: "\033[36m",
    logging.INFO: "\033[32m",
    logging.WARNING: "\033[33m",
    logging.ERROR: "\033[31m",
    logging.CRITICAL: "\033[35m",
}
_RESET = "\033[0m"


@contextmanager
def bound_context(bound_id: str) -> Iterator[None]:
    """Tag records logged inside the block with ``bound_id``."""
    token = _active_bound.set(bound_id)
    try:
        yield
    finally:
        _active_bound.reset(token)


class _BoundFilter(logging.Filter):
    def filter(self, record: logging.LogRecord) -> bool:
        record.bound = _active_bound.get()
        return True


class ColoredFormatter(logging.Formatter):
    """Colours the level name; in verbose mode also prints logger and bound."""

    def __init__(self, verbose: bool = False):
        detail = "[%(name)s|%(bound)s] " if verbose else ""
        super().__init__(f"%(levelname)s: {detail}%(message)s")

    def format(self, record: logging.LogRecord) -> str:
        if not hasattr(record, "bound"):
            record.bound = _active_bound.get()
        plain = record.levelname
        colour = _LEVEL_COLOURS.get(record.levelno)
        if colour:
            record.levelname = f"{colour}{plain}{_RESET}"
        try:
            return super().format(record)
        finally:
            record.levelname = plain


def _utf8(stream):
    # result lines carry ✅/❌, which legacy code pages cannot encode
    try:
        stream.reconfigure(encoding="utf-8", errors="replace")
    except (AttributeError, ValueError, OSError):
        pass
    return stream


class RatioBoundsLogger:
    """Singleton owning the handlers of the ``ratio_bounds`` logger."""

    _instance = None
    _logger: Optional[logging.Logger] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if self._logger is None:
            self.configure()

    def configure(self, verbose: bool = False, log_file: Optional[str] = None) -> None:
        """Replace the handlers: coloured console at INFO or DEBUG, optional DEBUG file."""
        root = logging.getLogger(LOGGER_NAME)
        root.setLevel(logging.DEBUG)
        root.propagate = False
        for handler in list(root.handlers):
            root.removeHandler(handler)
            if isinstance(handler, logging.FileHandler):
                handler.close()

        console = logging.StreamHandler(_utf8(sys.stdout))
        console.setLevel(logging.DEBUG if verbose else logging.INFO)
        console.setFormatter(ColoredFormatter(verbose))
        console.addFilter(_BoundFilter())
        root.addHandler(console)

        if log_file:
            to_file = logging.FileHandler(log_file, encoding="utf-8")
            to_file.setLevel(logging.DEBUG)
            to_file.setFormatter(logging.Formatter(FILE_FORMAT))
            to_file.addFilter(_BoundFilter())
            root.addHandler(to_file)
        self._logger = root

    @property
    def logger(self) -> logging.Logger:
        return self._logger


_logger_instance = RatioBoundsLogger()
logger = _logger_instance.logger


def setup_logging(log_file: Optional[str] = None, verbose: bool = False):
    """Configure console (and optionally file) logging for one command."""
    _logger_instance.configure(verbose, log_file)
    logger.debug(f"Console level: {'DEBUG' if verbose else 'INFO'}")
    if log_file:
        logger.debug(f"Also logging to {log_file}")


def get_logger() -> logging.Logger:
    return logger


def get_module_logger(name: str) -> logging.Logger:
    """Child logger ``ratio_bounds.<last component of name>``."""
    return logging.getLogger(f"{LOGGER_NAME}.{name.rsplit('.', 1)[-1]}")


def get_oracle_logger():
    return get_module_logger('oracle')


def get_verify_logger():
    return get_module_logger('verify')


def get_accuracy_logger():
    return get_module_logger('accuracy')


def get_riccati_logger():
    return get_module_logger('riccati')


def get_export_logger():
    return get_module_logger('export')


def get_analysis_logger():
    return get_module_logger('analysis')
