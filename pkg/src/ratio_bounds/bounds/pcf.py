"""
Bounds for the parabolic cylinder ratio Phi_n(x) = U(n-1, x) / U(n, x).

Every formula accepts ``n`` as a float or an :class:`Enclosure` and ``x`` as a
float or a complex number, so the same code seeds the oracle rigorously and
feeds complex-step derivatives. For x < 0 the square-root forms are evaluated
in their conjugate form to avoid cancellation.
"""

from __future__ import annotations

from typing import Callable

from ..core.enclosure import acos, cos, real_part, sqrt
from ..core.errors import ArccosRangeError, SignViolationError
from ._common import clamp_unit, require

BoundFn = Callable[[object, object], object]


def _half_sum(x, shift):
    """``(x + sqrt(x**2 + shift)) / 2`` for shift > 0, stable for x < 0."""
    root = sqrt(x * x + shift)
    if real_part(x) < 0.0:
        return 0.5 * shift / (root - x)
    return 0.5 * (x + root)


def b21(n, x):
    """Lower bound B^(2,1): (x + sqrt(x^2 + 4n - 2)) / 2, n > 1/2."""
    require(real_part(n) > 0.5, f"b21 requires n > 1/2, got n={n}")
    return _half_sum(x, 4 * n - 2)


def b12(n, x):
    """Upper bound B^(1,2): (x + sqrt(x^2 + 4n + 2)) / 2, n > -1/2."""
    require(real_part(n) > -0.5, f"b12 requires n > -1/2, got n={n}")
    return _half_sum(x, 4 * n + 2)


def b30(n, x):
    """Upper bound B^(3,0), n > 3/2."""
    require(real_part(n) > 1.5, f"b30 requires n > 3/2, got n={n}")
    return (n - 0.5) / (n - 1.5) * _half_sum(x, 4 * n - 6)


def b03(n, x):
    """Lower bound B^(0,3), n > -1/2; negative for x < -(n + 1/2)."""
    require(real_part(n) > -0.5, f"b03 requires n > -1/2, got n={n}")
    root = sqrt(x * x + 4 * n + 6)
    if real_part(x) < 0.0:
        half = n + 0.5
        return 2 * (half * half - x * x) / (half * root - (n + 2.5) * x)
    return ((n + 2.5) * x + (n + 0.5) * root) / (2 * (n + 1.5))


def b40(n, x):
    """Lower bound B^(4,0), n > 5/2."""
    require(real_part(n) > 2.5, f"b40 requires n > 5/2, got n={n}")
    denominator = (n - 1.5) * sqrt(x * x + 4 * n - 10) - (n - 3.5) * x
    require(real_part(denominator) > 0.0, f"b40 denominator {denominator} is not positive",
            code="DENOMINATOR_NONPOSITIVE")
    return 2 * (n - 0.5) * (n - 2.5) / denominator


def cubic_root(n, x):
    """Largest root z of z^3 - (x^2/4 + n) z - x/4 = 0 in trigonometric form."""
    require(real_part(n) > 0.5, f"the cubic nullcline requires n > 1/2, got n={n}")
    f = sqrt((x * x + 4 * n) / 3.0)
    argument = clamp_unit(x / (f * f * f), ArccosRangeError, "trig33 arccos")
    return f * cos(acos(argument) / 3.0)


def trig33(n, x):
    """Trigonometric lower bound B^(3,3): x/2 + f_n cos(arccos(x / f_n^3) / 3)."""
    return 0.5 * x + cubic_root(n, x)


def alg33(n, x):
    """Algebraic lower bound B^(3,3): x/2 + sqrt(x^2/4 + g_n(x)); alg33 <= trig33."""
    require(real_part(n) > 0.5, f"alg33 requires n > 1/2, got n={n}")
    g = (n + 0.5) * b21(n, x) / b12(n, x)
    root = sqrt(0.25 * x * x + g)
    if real_part(x) < 0.0:
        return g / (root - 0.5 * x)
    return 0.5 * x + root


# --- recurrence lifting --------------------------------------------------------
def lift_backward(bound_fn: BoundFn, n, x):
    """Phi_n = x + (n + 1/2) / Phi_{n+1}; a bound at n+1 flips side at n."""
    return x + (n + 0.5) / bound_fn(n + 1, x)


def lift_forward(bound_fn: BoundFn, n, x):
    """Phi_n = (n - 1/2) / (Phi_{n-1} - x); a bound at n-1 flips side at n."""
    shifted = bound_fn(n - 1, x) - x
    if not real_part(shifted) > 0.0:
        raise SignViolationError(f"bound at n-1={n - 1} does not exceed x={x}")
    return (n - 0.5) / shifted


def b24(n, x):
    """Upper bound from the backward lift of trig33, n > -1/2."""
    require(real_part(n) > -0.5, f"b24 requires n > -1/2, got n={n}")
    return lift_backward(trig33, n, x)


def b42(n, x):
    """Upper bound from the forward lift of trig33, n > 3/2."""
    require(real_part(n) > 1.5, f"b42 requires n > 3/2, got n={n}")
    return lift_forward(trig33, n, x)
