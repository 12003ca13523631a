"""
Bounds for Kummer ratios in the m-normalisation m(a,b,x) = Gamma(a)/Gamma(b) M(a,b,x).

h(a,b,x) = m(a+1,b+1,x)/m(a,b,x) is the canonical ratio. The other two
contiguous directions follow from

    m(a+1,b,x)/m(a,b,x)   = a + x h(a,b,x)
    m(a+1,b+2,x)/m(a,b,x) = (a - b h(a,b,x)) / (x (a - b))

and the Ku pair bounding 2b M(a,b,x)/M(a+1,b+1,x) = 2a/h.
"""

from __future__ import annotations

from typing import Tuple

from ..core.enclosure import real_part, sqrt
from ..core.types import Side
from ._common import require, require_positive_x


def _check(a, b, x) -> None:
    require(real_part(a) > 0.0 and real_part(b) > 0.0, f"Kummer bounds require a, b > 0, got a={a}, b={b}")
    require_positive_x(x)


def side_of_lambda(a: float, b: float) -> Side:
    """lambda bounds h from above when b > a and from below when b < a."""
    if b > a:
        return Side.UPPER
    if b < a:
        return Side.LOWER
    return Side.EQUAL


def lambda_kummer(a, b, x):
    """Positive root of a/x + (1 - b/x) y - y^2 = 0."""
    _check(a, b, x)
    s = b - x
    root = sqrt(s * s + 4 * a * x)
    if real_part(s) >= 0.0:
        return 2 * a / (s + root)
    return (root - s) / (2 * x)


def _tilde_root(a, b, x):
    t = x - b - 1
    return sqrt(t * t + 4 * (a + 1) * x)


def lambda_tilde(a, b, x):
    """2a / (b - x - 1 + sqrt((x - b - 1)^2 + 4(a + 1)x)); the companion of lambda."""
    _check(a, b, x)
    s = b - x - 1
    root = _tilde_root(a, b, x)
    if real_part(s) >= 0.0:
        return 2 * a / (s + root)
    return a * (root - s) / (2 * (b + a * x))


def b03_confluent(a, b, x):
    """lambda(a-1, b-1, x): lower bound of h when a < b, upper when a > b; a, b > 1."""
    require(real_part(a) > 1.0 and real_part(b) > 1.0, f"b03_confluent requires a, b > 1, got a={a}, b={b}")
    return lambda_kummer(a - 1, b - 1, x)


def ab1b1_bounds(a: float, b: float, x: float) -> Tuple[float, float]:
    """(lower, upper) for h(a,b,x) from lambda and lambda_tilde."""
    lam = lambda_kummer(a, b, x)
    tilde = lambda_tilde(a, b, x)
    if a == b:
        return 1.0, 1.0
    return (tilde, lam) if b > a else (lam, tilde)


def ratio_a1b_bounds(a: float, b: float, x: float) -> Tuple[float, float]:
    """(lower, upper) for m(a+1,b,x)/m(a,b,x) = a + x h; no subtraction, so accuracy is kept."""
    lower, upper = ab1b1_bounds(a, b, x)
    return a + x * lower, a + x * upper


def a1b2_from_h(a, b, x, h):
    """Transport a value of h through m(a+1,b+2)/m(a,b) = (a - b h) / (x (a - b)); a != b."""
    require(real_part(a) != real_part(b), "the A1B2 identity divides by a - b")
    return (a - b * h) / (x * (a - b))


def eta(a, b, x):
    """Upper bound of m(a+1,b+2,x)/m(a,b,x) for all a, b, x > 0."""
    _check(a, b, x)
    s = b - x
    root = sqrt(s * s + 4 * a * x)
    if real_part(s) >= 0.0:
        return 4 * a / ((x + b + root) * (s + root))
    return (root - s) / (x * (x + b + root))


def eta_tilde(a, b, x):
    """Lower bound of m(a+1,b+2,x)/m(a,b,x) for all a, b, x > 0."""
    _check(a, b, x)
    shifted = x + b + 1
    radicand = shifted * shifted + 4 * (a - b) * x
    require(real_part(radicand) >= 0.0, f"eta_tilde radicand {radicand} is negative", code="RADICAND_NEGATIVE")
    # the radicand equals (x - b - 1)^2 + 4(a + 1)x, positive for a > -1
    p = 2 * x / (shifted + _tilde_root(a, b, x))
    return a * p / (x * (a * p + b * (1 - p)))


def _sum_form(s, root, conjugate_numerator):
    # s + root, rewritten as (root^2 - s^2) / (root - s) when s < 0
    if real_part(s) >= 0.0:
        return s + root
    return conjugate_numerator / (root - s)


def ku_bounds(a: float, b: float, x: float) -> Tuple[float, float]:
    """(lower, upper) for 2b M(a,b,x)/M(a+1,b+1,x) = 2a/h, ordered by the sign of b - a."""
    _check(a, b, x)
    from_lambda = _sum_form(b - x, sqrt((b - x) * (b - x) + 4 * a * x), 4 * a * x)
    from_tilde = _sum_form(b - x - 1, _tilde_root(a, b, x), 4 * (b + a * x))
    if a == b:
        return 2.0 * a, 2.0 * a
    return (from_lambda, from_tilde) if b > a else (from_tilde, from_lambda)


# --- expansions of h -----------------------------------------------------------
def h_expansion_at_zero(a: float, b: float, x: float) -> float:
    """a/b (1 + (b - a) x / (b (b + 1))), two terms at x = 0."""
    return a / b * (1 + (b - a) * x / (b * (b + 1)))


def h_expansion_at_infinity(a: float, b: float, x: float) -> float:
    """1 + (a - b)/x, two terms at +inf."""
    return 1 + (a - b) / x
