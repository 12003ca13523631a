"""
Power series of M(a,b,x) and 2F1(a,b;c;x) with rigorous error bounds.

The series serve as independent cross-checks of the recurrence oracles and as
fallbacks where a recurrence contracts too slowly (Gauss ratio near x = 1,
Kummer ratio at large x, parabolic cylinder ratio around x = 0).

Terms are produced by their ratio recurrence and summed with ``math.fsum``.
The returned error is the sum of

* a geometric tail bound, valid once the majorant of the term ratio is
  below one and decreasing, and
* a rounding bound ``K u sum((k+1)|t_k|)`` for the term recurrence plus one
  rounding of the sum.
"""

import math
from typing import Tuple

from ..core.config import Config
from ..core.enclosure import Enclosure
from ..core.errors import DomainError, NoConvergenceError
from ..utils.logging_config import get_oracle_logger

logger = get_oracle_logger()

UNIT_ROUNDOFF = 2.0 ** -53
KUMMER_ROUNDING = 6.0
GAUSS_ROUNDING = 8.0
GAMMA_RELATIVE_ERROR = 64 * 2.0 ** -52


def _nonpositive_integer(value: float) -> bool:
    return value <= 0.0 and float(value).is_integer()


def _finish(terms, weighted: float, tail: float, factor: float) -> Tuple[float, float]:
    total = math.fsum(terms)
    err = tail + factor * UNIT_ROUNDOFF * weighted + UNIT_ROUNDOFF * abs(total)
    return total, err


def kummer_series(a: float, b: float, x: float, tol: float = Config.SERIES_TOLERANCE,
                  log_scale: float = 0.0, max_terms: int = Config.SERIES_MAX_TERMS) -> Tuple[float, float]:
    """
    Sum M(a,b,x) = sum (a)_k x^k / ((b)_k k!) for x >= 0.

    Args:
        tol: Relative tolerance for the tail bound
        log_scale: The result is exp(-log_scale) M(a,b,x); keeps terms finite for large x

    Returns:
        (value, err) with |value - exp(-log_scale) M(a,b,x)| <= err
    """
    if _nonpositive_integer(b):
        raise DomainError(f"M(a,b,x) is undefined for b={b}")
    if x < 0.0:
        raise DomainError(f"kummer_series is restricted to x >= 0, got x={x}")
    if not tol > 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    first = math.exp(-log_scale)
    if x == 0.0 or a == 0.0:
        return first, 0.0

    terms = [first]
    weighted = abs(first)
    term = first
    abs_a, abs_b = abs(a), abs(b)
    for k in range(max_terms):
        term *= (a + k) * x / ((b + k) * (k + 1))
        terms.append(term)
        j = k + 1
        weighted += (j + 1) * abs(term)
        if term == 0.0:
            return _finish(terms, weighted, 0.0, KUMMER_ROUNDING)
        if j > abs_b:
            # |t_{i+1}/t_i| <= x(|a|+i)/((i-|b|)(i+1)), decreasing in i > |b|
            rho = x * (abs_a + j) / ((j - abs_b) * (j + 1))
            if rho < 1.0:
                tail = abs(term) * rho / (1.0 - rho)
                if tail <= tol * abs(math.fsum(terms)):
                    return _finish(terms, weighted, tail, KUMMER_ROUNDING)
    logger.debug(f"kummer_series({a}, {b}, {x}) hit the term cap {max_terms}")
    raise NoConvergenceError(f"M({a}, {b}, {x}): tail bound not met within {max_terms} terms")


def gauss_series(a: float, b: float, c: float, x: float, tol: float = Config.SERIES_TOLERANCE,
                 max_terms: int = Config.SERIES_MAX_TERMS) -> Tuple[float, float]:
    """Sum 2F1(a,b;c;x) for 0 <= x < 1; returns (value, err)."""
    if _nonpositive_integer(c):
        raise DomainError(f"2F1(a,b;c;x) is undefined for c={c}")
    if not 0.0 <= x < 1.0:
        raise DomainError(f"gauss_series requires 0 <= x < 1, got x={x}")
    if not tol > 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if x == 0.0 or a == 0.0 or b == 0.0:
        return 1.0, 0.0

    terms = [1.0]
    weighted = 1.0
    term = 1.0
    abs_a, abs_b, abs_c = abs(a), abs(b), abs(c)
    for k in range(max_terms):
        term *= (a + k) * (b + k) * x / ((c + k) * (k + 1))
        terms.append(term)
        j = k + 1
        weighted += (j + 1) * abs(term)
        if term == 0.0:
            return _finish(terms, weighted, 0.0, GAUSS_ROUNDING)
        if j > abs_c:
            rho = x * max(1.0, (abs_a + j) / (j + 1)) * (abs_b + j) / (j - abs_c)
            if rho < 1.0:
                tail = abs(term) * rho / (1.0 - rho)
                if tail <= tol * abs(math.fsum(terms)):
                    return _finish(terms, weighted, tail, GAUSS_ROUNDING)
    logger.debug(f"gauss_series({a}, {b}, {c}, {x}) hit the term cap {max_terms}")
    raise NoConvergenceError(f"2F1({a}, {b}; {c}; {x}): tail bound not met within {max_terms} terms")


def _around(value: float, err: float) -> Enclosure:
    return Enclosure.around(value, err)


# --- ratio quotients -----------------------------------------------------------
def kummer_quotient(a: float, b: float, x: float, da: int, db: int) -> Enclosure:
    """Enclosure of M(a+da, b+db, x) / M(a, b, x)."""
    scale = x  # M grows like exp(x); the scale cancels in the quotient
    top, top_err = kummer_series(a + da, b + db, x, log_scale=scale)
    bottom, bottom_err = kummer_series(a, b, x, log_scale=scale)
    return _around(top, top_err) / _around(bottom, bottom_err)


def kummer_ratio_series(a: float, b: float, x: float) -> Enclosure:
    """h(a,b,x) = (a/b) M(a+1,b+1,x)/M(a,b,x)."""
    return (Enclosure.point(a) / b) * kummer_quotient(a, b, x, 1, 1)


def kummer_a1b2_series(a: float, b: float, x: float) -> Enclosure:
    """m(a+1,b+2,x)/m(a,b,x) = a/(b(b+1)) M(a+1,b+2,x)/M(a,b,x)."""
    return (Enclosure.point(a) / (Enclosure.point(b) * (Enclosure.point(b) + 1))) * kummer_quotient(a, b, x, 1, 2)


def gauss_quotient(a: float, b: float, c: float, x: float) -> Enclosure:
    """Enclosure of 2F1(a+1,b+1;c+1;x) / 2F1(a,b;c;x)."""
    top, top_err = gauss_series(a + 1, b + 1, c + 1, x)
    bottom, bottom_err = gauss_series(a, b, c, x)
    return _around(top, top_err) / _around(bottom, bottom_err)


def gauss_ratio_series(a: float, b: float, c: float, x: float) -> Enclosure:
    """h(a,b,c,x) = (ab/c) 2F1(a+1,b+1;c+1;x)/2F1(a,b;c;x)."""
    return (Enclosure.point(a) * b / c) * gauss_quotient(a, b, c, x)


def _pcf_coefficients(order: float) -> Tuple[Enclosure, Enclosure]:
    # U(a,0) and U'(a,0) without the common factor sqrt(pi)
    p = 2.0 ** (-order / 2 - 0.25) / math.gamma(0.75 + order / 2)
    q = -(2.0 ** (-order / 2 + 0.25)) / math.gamma(0.25 + order / 2)
    return (Enclosure.around(p, GAMMA_RELATIVE_ERROR * abs(p)),
            Enclosure.around(q, GAMMA_RELATIVE_ERROR * abs(q)))


def _pcf_scaled(order: float, x: float) -> Enclosure:
    """exp(x^2/4) U(order, x) / sqrt(pi), further scaled by exp(-x^2/4)."""
    z = 0.5 * x * x
    scale = 0.5 * z
    p, q = _pcf_coefficients(order)
    even, even_err = kummer_series(order / 2 + 0.25, 0.5, z, log_scale=scale)
    odd, odd_err = kummer_series(order / 2 + 0.75, 1.5, z, log_scale=scale)
    return p * _around(even, even_err) + q * _around(odd, odd_err) * x


def pcf_ratio_series(n: float, x: float) -> Enclosure:
    """U(n-1,x)/U(n,x) from the even/odd Kummer-series representation of U; n > 1/2."""
    if not n > 0.5:
        raise DomainError(f"PCF series ratio requires n > 1/2, got n={n}")
    return _pcf_scaled(n - 1, x) / _pcf_scaled(n, x)
