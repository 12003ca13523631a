"""
Exception hierarchy for ratio-bounds.

Every failure the library can report is a subclass of RatioBoundsError and
carries a stable upper-case ``code`` that the CLI and the reports use.
"""

from typing import Any, Optional


class RatioBoundsError(Exception):
    """Base class for all errors raised by ratio-bounds."""

    code = "ERROR"

    def __init__(self, message: str = "", *, code: Optional[str] = None):
        super().__init__(message or self.code)
        if code is not None:
            self.code = code


# --- enclosure arithmetic ------------------------------------------------------
class EnclosureError(RatioBoundsError):
    code = "ENCLOSURE"


class DivisionContainsZeroError(EnclosureError):
    code = "DIVISION_CONTAINS_ZERO"


class NegativeSqrtError(EnclosureError):
    code = "NEGATIVE_SQRT"


class EmptyIntersectionError(EnclosureError):
    """Two enclosures of the same quantity do not overlap."""

    code = "EMPTY_INTERSECTION"


# --- parameter domains ---------------------------------------------------------
class DomainError(RatioBoundsError):
    """Parameters or argument outside the validity region of an operation.

    Also raised with the more specific codes RADICAND_NEGATIVE,
    DENOMINATOR_NONPOSITIVE and NONPOSITIVE_C.
    """

    code = "DOMAIN"


class ArccosRangeError(RatioBoundsError):
    code = "ARCCOS_RANGE"


class DiscriminantError(RatioBoundsError):
    code = "DISCRIMINANT"


class SignViolationError(RatioBoundsError):
    code = "SIGN_VIOLATION"


# --- oracles -------------------------------------------------------------------
class NotConvergedError(RatioBoundsError):
    """The enclosure did not reach the target width at max depth.

    ``result`` holds the widest achieved enclosure with its metadata.
    """

    code = "NOT_CONVERGED"

    def __init__(self, message: str = "", result: Any = None):
        super().__init__(message)
        self.result = result


class TailSeedInvalidError(RatioBoundsError):
    code = "TAIL_SEED_INVALID"


class NoConvergenceError(RatioBoundsError):
    """A series did not meet its tail-bound condition within the term cap."""

    code = "NO_CONVERGENCE"


# --- Riccati checkers ----------------------------------------------------------
class SignConditionFailedError(RatioBoundsError):
    code = "SIGN_CONDITION_FAILED"


# --- accuracy fits -------------------------------------------------------------
class ShrinkWindowError(RatioBoundsError):
    code = "SHRINK_WINDOW"


class OverprecisionError(RatioBoundsError):
    code = "OVERPRECISION"


# --- configuration -------------------------------------------------------------
class ConfigError(RatioBoundsError):
    """Unknown ids, empty grids, malformed grid files or settings."""

    code = "CONFIG"
