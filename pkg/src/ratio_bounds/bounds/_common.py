"""Helpers shared by the bound formulas."""

from ..core.enclosure import real_part, sqrt
from ..core.errors import DomainError

ARCCOS_DUST = 1e-14


def require(condition: bool, message: str, code: str = "DOMAIN") -> None:
    if not condition:
        raise DomainError(message, code=code)


def require_positive_x(x) -> None:
    require(real_part(x) > 0.0, f"x must be positive, got {x}")


def clamp_unit(value, error_cls, what: str):
    """Clamp an arccos argument that overshoots [-1, 1] by rounding dust only."""
    magnitude = abs(real_part(value))
    if magnitude <= 1.0:
        return value
    if magnitude <= 1.0 + ARCCOS_DUST:
        return 1.0 if real_part(value) > 0 else -1.0
    raise error_cls(f"{what} argument {real_part(value)!r} outside [-1, 1]")


def b_form(alpha, beta, gamma, x):
    """``(alpha + sqrt(beta**2 + gamma**2 x**2)) / x``."""
    radicand = beta * beta + gamma * gamma * x * x
    root = sqrt(radicand)
    if real_part(alpha) < 0.0:
        # alpha + root cancels when alpha < 0; use the conjugate form.
        return (beta * beta - alpha * alpha + gamma * gamma * x * x) / (x * (root - alpha))
    return (alpha + root) / x
