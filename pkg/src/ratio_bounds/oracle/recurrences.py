"""
Enclosure oracles built from three-term recurrences.

Each ratio is enclosed by one or more *methods*:

* a tail-seeded recurrence in the direction of the minimal solution, where a
  proven lower/upper bound pair at a shifted index is propagated back with
  enclosure arithmetic (PCF, Bessel I, Kummer, Gauss);
* an upward recurrence from a base order seeded by a bound pair intersected
  with a Tricomi-function continued fraction (Bessel K);
* a series quotient with rigorous error (fallbacks, see ``series``).

All successful methods are intersected. The depth starts at ``cfg.depth`` and
doubles until the relative width reaches ``cfg.target_rel_width`` or
``cfg.max_depth`` is used. The ``*_result`` functions never raise on
non-convergence; the named ``*_enclosure`` functions raise
``NotConvergedError`` carrying the achieved result.
"""

from __future__ import annotations

import math
from typing import Callable, List, Optional, Sequence, Tuple

from ..bounds.bessel import k_lower_ratio_m1, lower_I, lower_K, upper_I, upper_K
from ..bounds.confluent import b03_confluent, lambda_kummer, lambda_tilde
from ..bounds.gauss import GaussRatioParams, lambda_gauss, upper_H
from ..bounds.pcf import b03, b12, b21, b30
from ..core.config import Config, OracleConfig
from ..core.enclosure import Enclosure
from ..core.errors import (
    DomainError,
    EmptyIntersectionError,
    EnclosureError,
    NoConvergenceError,
    NotConvergedError,
    SignViolationError,
    TailSeedInvalidError,
)
from ..core.types import OracleResult, RatioKind, RatioSpec, check_domain
from ..utils.logging_config import get_oracle_logger
from . import series

logger = get_oracle_logger()

Stepped = Tuple[str, Callable[[int], Enclosure]]
Fixed = Tuple[str, Callable[[], Enclosure]]
SeedPair = Callable[..., Tuple[Enclosure, Enclosure]]

_METHOD_FAILURES = (EnclosureError, DomainError, NoConvergenceError, TailSeedInvalidError, SignViolationError)


def _config(cfg: Optional[OracleConfig]) -> OracleConfig:
    return cfg if cfg is not None else Config.oracle_config()


def _attempt(label: str, name: str, fn: Callable[[], Enclosure]) -> Optional[Enclosure]:
    try:
        return fn()
    except EmptyIntersectionError:
        raise
    except _METHOD_FAILURES as exc:
        logger.debug(f"{label}: method {name} failed ({exc.code}: {exc})")
        return None


def _intersect(label: str, parts: Sequence[Tuple[str, Enclosure]], depth: int, cfg: OracleConfig) -> OracleResult:
    names = []
    enclosure = None
    for name, part in parts:
        names.append(name)
        try:
            enclosure = part if enclosure is None else enclosure.intersect(part)
        except EmptyIntersectionError:
            logger.error(f"{label}: method {name} gave {part}, disjoint from {enclosure}")
            raise
    converged = enclosure.rel_width <= cfg.target_rel_width
    return OracleResult(enclosure, depth, converged, "+".join(names))


def _narrowed(label: str, result: OracleResult, previous: OracleResult, cfg: OracleConfig) -> OracleResult:
    try:
        enclosure = result.enclosure.intersect(previous.enclosure)
    except EmptyIntersectionError:
        logger.error(f"{label}: depth {result.depth} gave {result.enclosure}, "
                     f"disjoint from depth {previous.depth} {previous.enclosure}")
        raise
    return OracleResult(enclosure, result.depth, enclosure.rel_width <= cfg.target_rel_width, result.method)


def _escalate(label: str, cfg: OracleConfig, stepped: Sequence[Stepped] = (),
              fixed: Sequence[Fixed] = (), fallback: Sequence[Fixed] = ()) -> OracleResult:
    """Run the methods with doubling depth; intersect whatever succeeds.

    Each deeper enclosure is intersected with the previous one, so the
    sequence of enclosures is nested.
    """
    fixed_parts = []
    for name, fn in fixed:
        enclosure = _attempt(label, name, fn)
        if enclosure is not None:
            fixed_parts.append((name, enclosure))

    best: Optional[OracleResult] = None
    parts: List[Tuple[str, Enclosure]] = list(fixed_parts)
    depths = list(cfg.depths()) if stepped else [cfg.depth]
    for depth in depths:
        parts = list(fixed_parts)
        for name, fn in stepped:
            enclosure = _attempt(label, name, lambda: fn(depth))
            if enclosure is not None:
                parts.append((name, enclosure))
        if not parts:
            continue
        result = _intersect(label, parts, depth, cfg)
        if best is not None:
            result = _narrowed(label, result, best, cfg)
        best = result
        if result.converged:
            return result
        logger.debug(f"{label}: depth {depth} rel width {result.enclosure.rel_width:.3e}, escalating")

    if fallback:
        base = [] if best is None else [(best.method, best.enclosure)]
        for name, fn in fallback:
            enclosure = _attempt(label, name, fn)
            if enclosure is not None:
                base.append((name, enclosure))
        if base:
            depth = best.depth if best is not None else depths[-1]
            result = _intersect(label, base, depth, cfg)
            if best is None or result.enclosure.rel_width <= best.enclosure.rel_width:
                best = result
            if result.converged:
                logger.debug(f"{label}: converged through fallback {result.method}")
                return result

    if best is None:
        raise NotConvergedError(f"{label}: no method produced an enclosure", result=None)
    logger.debug(f"{label}: not converged, rel width {best.enclosure.rel_width:.3e}")
    return best


def _require_converged(label: str, result: OracleResult) -> Enclosure:
    if not result.converged:
        raise NotConvergedError(
            f"{label}: rel width {result.enclosure.rel_width:.3e} above target at depth {result.depth}",
            result=result,
        )
    return result.enclosure


def _seed(lower: Enclosure, upper: Enclosure) -> Enclosure:
    if lower.lo > upper.hi:
        raise TailSeedInvalidError(f"seed pair out of order: {lower} above {upper}")
    return Enclosure(lower.lo, upper.hi)


def _bracket(pair: SeedPair, *args: Enclosure) -> Enclosure:
    return _seed(*pair(*args))


def _narrow(value: Enclosure, pair: SeedPair, *args: Enclosure) -> Enclosure:
    """Intersect an intermediate value with the bound pair at its own index, where the pair applies."""
    try:
        bracket = _bracket(pair, *args)
    except DomainError:
        return value
    return value.intersect(bracket)


def _index(base: float, shift: float) -> Enclosure:
    return Enclosure.point(base) + shift


# --- parabolic cylinder --------------------------------------------------------
def _pcf_pair(n: Enclosure, X: Enclosure) -> Tuple[Enclosure, Enclosure]:
    return b21(n, X), b12(n, X)


def _pcf_alternate_pair(n: Enclosure, X: Enclosure) -> Tuple[Enclosure, Enclosure]:
    return b03(n, X), b30(n, X)


def _pcf_backward(n: float, x: float, depth: int, pair: SeedPair = _pcf_pair) -> Enclosure:
    X = Enclosure.point(x)
    phi = _bracket(pair, _index(n, depth), X)
    for j in range(depth - 1, -1, -1):
        index = _index(n, j)
        phi = _narrow(X + (index + 0.5) / phi, pair, index, X)
    return phi


def _pcf_forward(n: float, x: float) -> Enclosure:
    X = Enclosure.point(x)
    steps = math.floor(n - 0.5)
    k0 = Enclosure.point(n) - steps if steps else Enclosure.point(n)
    phi = _seed(b21(k0, X), b12(k0, X))
    for j in range(1, steps + 1):
        phi = (k0 + (j - 0.5)) / (phi - X)
    return phi


def pcf_ratio_result(n: float, x: float, cfg: Optional[OracleConfig] = None) -> OracleResult:
    check_domain(RatioKind.PCF, (n,), x)
    cfg = _config(cfg)
    label = f"pcf(n={n}, x={x})"
    fixed: List[Fixed] = []
    if x < 0.0:
        fixed.append(("forward", lambda: _pcf_forward(n, x)))
    lo, hi = Config.PCF_SERIES_RANGE
    if lo <= x <= hi:
        fixed.append(("series", lambda: series.pcf_ratio_series(n, x)))
    return _escalate(label, cfg, stepped=[("backward", lambda d: _pcf_backward(n, x, d))], fixed=fixed)


def pcf_ratio_enclosure(n: float, x: float, cfg: Optional[OracleConfig] = None) -> Enclosure:
    """Enclosure of U(n-1,x)/U(n,x), n > 1/2."""
    return _require_converged(f"pcf(n={n}, x={x})", pcf_ratio_result(n, x, cfg))


# --- Bessel I ------------------------------------------------------------------
def _bessel_i_pair(nu: Enclosure, X: Enclosure) -> Tuple[Enclosure, Enclosure]:
    return lower_I(0.5, nu, X), upper_I(0.5, nu, X)


def _bessel_i_alternate_pair(nu: Enclosure, X: Enclosure) -> Tuple[Enclosure, Enclosure]:
    return lower_I(0.0, nu, X), upper_I(2.0, nu, X)


def _bessel_i_backward(nu: float, x: float, depth: int, pair: SeedPair = _bessel_i_pair) -> Enclosure:
    X = Enclosure.point(x)
    phi = _bracket(pair, _index(nu, depth), X)
    for j in range(depth - 1, -1, -1):
        index = _index(nu, j)
        phi = _narrow(2 * index / X + 1 / phi, pair, index, X)
    return phi


def bessel_i_ratio_result(nu: float, x: float, cfg: Optional[OracleConfig] = None) -> OracleResult:
    check_domain(RatioKind.BESSEL_I, (nu,), x)
    return _escalate(f"bessel_i(nu={nu}, x={x})", _config(cfg),
                     stepped=[("backward", lambda d: _bessel_i_backward(nu, x, d))])


def bessel_i_ratio_enclosure(nu: float, x: float, cfg: Optional[OracleConfig] = None) -> Enclosure:
    """Enclosure of I_{nu-1}(x)/I_nu(x), nu >= 0, x > 0."""
    return _require_converged(f"bessel_i(nu={nu}, x={x})", bessel_i_ratio_result(nu, x, cfg))


# --- Bessel K ------------------------------------------------------------------
def k_base_order(mu: float) -> Tuple[float, int]:
    """Base order in [1/2, 3/2) (or mu itself below 1/2) and the number of upward steps."""
    if mu < 0.5:
        return mu, 0
    steps = math.floor(mu - 0.5)
    return mu - steps, steps


def _k_order(nu: float, shift: int) -> Enclosure:
    """Enclosure of the order nu - shift."""
    return Enclosure.point(nu) if shift == 0 else Enclosure.point(nu) - shift


def _is_half(nu: float, shift: int) -> bool:
    value = nu - shift
    return value == 0.5 and value + shift == nu


def _tricomi_ratio(A: Enclosure, B: Enclosure, z: float, steps: int) -> Enclosure:
    """U(a+1,b,z)/U(a,b,z) by backward recurrence in a, each step clipped to [0, 1/a]."""
    Z = Enclosure.point(z)
    r = Enclosure(0.0, (1 / (A + steps)).hi)
    for j in range(steps, 0, -1):
        ai = A + j
        r = 1 / ((2 * ai + Z - B) - ai * (ai - B + 1) * r)
        below = A if j == 1 else A + (j - 1)
        r = r.intersect(Enclosure(0.0, (1 / below).hi))
    return r


def _bessel_k_base(NU: Enclosure, x: float, depth: int) -> Enclosure:
    X = Enclosure.point(x)
    if NU.mid >= 0.5:
        seed = _seed(lower_K(0.5, NU, X), upper_K(0.5, NU, X))
    else:
        # K_{nu+1} > K_nu and K_{nu+1}/K_nu > 2nu/x
        floor_value = max(1.0, (2 * NU / X).lo)
        seed = _seed(Enclosure.point(floor_value), upper_K(0.5, NU, X))
    steps = min(max(depth, math.ceil(60.0 / x)), Config.TRICOMI_MAX_STEPS)
    s = _tricomi_ratio(NU + 0.5, 2 * NU + 1, 2 * x, steps)
    continued = (NU + 0.5 + X + (NU * NU - 0.25) * s) / X
    return seed.intersect(continued)


def _bessel_k_upward(nu: float, shift: int, x: float, depth: int) -> Enclosure:
    """K_{mu+1}/K_mu at mu = nu - shift, from the base order upwards."""
    _, steps = k_base_order(nu - shift)
    total = shift + steps
    X = Enclosure.point(x)
    if _is_half(nu, total):
        phi = 1 + 1 / X
    else:
        phi = _bessel_k_base(_k_order(nu, total), x, depth)
    for i in range(1, steps + 1):
        phi = 2 * _k_order(nu, total - i) / X + 1 / phi
    return phi


def _bessel_k_any_result(nu: float, shift: int, x: float, cfg: OracleConfig) -> OracleResult:
    """K_{mu+1}/K_mu for any internal order mu = nu - shift >= 0."""
    label = f"bessel_k(nu={nu}-{shift}, x={x})"
    if not (nu - shift >= 0.0 and x > 0.0):
        raise DomainError(f"{label}: requires an order >= 0 and x > 0")
    _, steps = k_base_order(nu - shift)
    if _is_half(nu, shift + steps):
        return OracleResult(_bessel_k_upward(nu, shift, x, cfg.depth), cfg.depth, True, "closed-form")
    return _escalate(label, cfg, stepped=[("upward", lambda d: _bessel_k_upward(nu, shift, x, d))])


def bessel_k_ratio_result(nu: float, x: float, cfg: Optional[OracleConfig] = None) -> OracleResult:
    check_domain(RatioKind.BESSEL_K, (nu,), x)
    return _bessel_k_any_result(nu, 0, x, _config(cfg))


def bessel_k_ratio_enclosure(nu: float, x: float, cfg: Optional[OracleConfig] = None) -> Enclosure:
    """Enclosure of K_{nu+1}(x)/K_nu(x), nu >= 1/2, x > 0."""
    return _require_converged(f"bessel_k(nu={nu}, x={x})", bessel_k_ratio_result(nu, x, cfg))


def k_down_result(nu: float, x: float, cfg: Optional[OracleConfig] = None) -> OracleResult:
    """K_{nu-1}/K_nu for nu in {0, 1/2} or nu >= 1."""
    check_domain(RatioKind.BESSEL_K_DOWN, (nu,), x)
    cfg = _config(cfg)
    if nu == 0.0:
        # K_{-1} = K_1
        return _bessel_k_any_result(0.0, 0, x, cfg)
    if nu == 0.5:
        return OracleResult(Enclosure.point(1.0), cfg.depth, True, "closed-form")
    return _bessel_k_any_result(nu, 1, x, cfg).map(k_lower_ratio_m1)


def k_down_enclosure(nu: float, x: float, cfg: Optional[OracleConfig] = None) -> Enclosure:
    return _require_converged(f"k_down(nu={nu}, x={x})", k_down_result(nu, x, cfg))


def product_result(nu: float, x: float, cfg: Optional[OracleConfig] = None) -> OracleResult:
    """I_nu(x) K_nu(x) = 1 / (x (I_{nu-1}/I_nu + K_{nu-1}/K_nu))."""
    check_domain(RatioKind.BESSEL_IK_PRODUCT, (nu,), x)
    cfg = _config(cfg)
    i_side = bessel_i_ratio_result(nu, x, cfg)
    k_side = k_down_result(nu, x, cfg)
    enclosure = 1 / (Enclosure.point(x) * (i_side.enclosure + k_side.enclosure))
    converged = enclosure.rel_width <= cfg.target_rel_width
    return OracleResult(enclosure, max(i_side.depth, k_side.depth), converged,
                        f"product({i_side.method},{k_side.method})")


def product_enclosure(nu: float, x: float, cfg: Optional[OracleConfig] = None) -> Enclosure:
    return _require_converged(f"product(nu={nu}, x={x})", product_result(nu, x, cfg))


# --- Kummer --------------------------------------------------------------------
def _kummer_pair(A: Enclosure, B: Enclosure, X: Enclosure) -> Tuple[Enclosure, Enclosure]:
    lam, tilde = lambda_kummer(A, B, X), lambda_tilde(A, B, X)
    return (tilde, lam) if B.mid > A.mid else (lam, tilde)


def _kummer_alternate_pair(A: Enclosure, B: Enclosure, X: Enclosure) -> Tuple[Enclosure, Enclosure]:
    lam, shifted = lambda_kummer(A, B, X), b03_confluent(A, B, X)
    return (shifted, lam) if B.mid > A.mid else (lam, shifted)


def _kummer_backward(a: float, b: float, x: float, depth: int, pair: SeedPair = _kummer_pair) -> Enclosure:
    X = Enclosure.point(x)
    h = _bracket(pair, _index(a, depth), _index(b, depth), X)
    for j in range(depth - 1, -1, -1):
        A, B = _index(a, j), _index(b, j)
        h = _narrow(A / (B - X + X * h), pair, A, B, X)
    return h


def kummer_ratio_result(a: float, b: float, x: float, cfg: Optional[OracleConfig] = None) -> OracleResult:
    check_domain(RatioKind.KUMMER_AB1B1, (a, b), x)
    cfg = _config(cfg)
    if a == b:
        return OracleResult(Enclosure.point(1.0), 0, True, "exact")
    return _escalate(f"kummer(a={a}, b={b}, x={x})", cfg,
                     stepped=[("backward", lambda d: _kummer_backward(a, b, x, d))],
                     fallback=[("series", lambda: series.kummer_ratio_series(a, b, x))])


def kummer_ratio_enclosure(a: float, b: float, x: float, cfg: Optional[OracleConfig] = None) -> Enclosure:
    """Enclosure of m(a+1,b+1,x)/m(a,b,x); a, b, x > 0."""
    return _require_converged(f"kummer(a={a}, b={b}, x={x})", kummer_ratio_result(a, b, x, cfg))


def kummer_a1b_result(a: float, b: float, x: float, cfg: Optional[OracleConfig] = None) -> OracleResult:
    """m(a+1,b,x)/m(a,b,x) = a + x h."""
    check_domain(RatioKind.KUMMER_A1B, (a, b), x)
    return kummer_ratio_result(a, b, x, cfg).map(lambda h: a + Enclosure.point(x) * h)


def kummer_a1b2_result(a: float, b: float, x: float, cfg: Optional[OracleConfig] = None) -> OracleResult:
    """m(a+1,b+2,x)/m(a,b,x) = (a - b h)/(x (a - b)), intersected with its series quotient."""
    check_domain(RatioKind.KUMMER_A1B2, (a, b), x)
    cfg = _config(cfg)
    label = f"kummer_a1b2(a={a}, b={b}, x={x})"
    parts: List[Tuple[str, Enclosure]] = []
    depth = 0
    if a != b:
        h = kummer_ratio_result(a, b, x, cfg)
        depth = h.depth
        parts.append((h.method, (a - b * h.enclosure) / (Enclosure.point(x) * (Enclosure.point(a) - b))))
    from_series = _attempt(label, "series", lambda: series.kummer_a1b2_series(a, b, x))
    if from_series is not None:
        parts.append(("series", from_series))
    if not parts:
        raise NotConvergedError(f"{label}: no method produced an enclosure", result=None)
    return _intersect(label, parts, depth, cfg)


def kummer_H_result(a: float, b: float, x: float, cfg: Optional[OracleConfig] = None) -> OracleResult:
    """2b M(a,b,x)/M(a+1,b+1,x) = 2a/h."""
    check_domain(RatioKind.KUMMER_H, (a, b), x)
    return kummer_ratio_result(a, b, x, cfg).map(lambda h: 2 * a / h)


def kummer_H_enclosure(a: float, b: float, x: float, cfg: Optional[OracleConfig] = None) -> Enclosure:
    return _require_converged(f"kummer_H(a={a}, b={b}, x={x})", kummer_H_result(a, b, x, cfg))


# --- Gauss ---------------------------------------------------------------------
def _gauss_seedable(A: Enclosure, B: Enclosure, C: Enclosure) -> bool:
    params = GaussRatioParams(A.mid, B.mid, C.mid)
    return params.monotone and params.extended


def _gauss_pair(A: Enclosure, B: Enclosure, C: Enclosure, X: Enclosure) -> Enclosure:
    return _seed(2 * A * B / upper_H(A, B, C, X), lambda_gauss(A, B, C, X))


def _gauss_backward(a: float, b: float, c: float, x: float, depth: int) -> Enclosure:
    X = Enclosure.point(x)
    A, B, C = _index(a, depth), _index(b, depth), _index(c, depth)
    if not _gauss_seedable(A, B, C):
        raise TailSeedInvalidError(f"Gauss tail seed invalid at shift {depth}: {GaussRatioParams(A.mid, B.mid, C.mid)}")
    h = _gauss_pair(A, B, C, X)
    one_minus = 1 - X
    for j in range(depth - 1, -1, -1):
        aj, bj, cj = _index(a, j), _index(b, j), _index(c, j)
        h = aj * bj / (cj - (aj + bj + 1) * X + X * one_minus * h)
        if _gauss_seedable(aj, bj, cj):
            h = h.intersect(_gauss_pair(aj, bj, cj, X))
    return h


def gauss_ratio_result(a: float, b: float, c: float, x: float, cfg: Optional[OracleConfig] = None) -> OracleResult:
    check_domain(RatioKind.GAUSS, (a, b, c), x)
    cfg = _config(cfg)
    label = f"gauss(a={a}, b={b}, c={c}, x={x})"
    from_series = ("series", lambda: series.gauss_ratio_series(a, b, c, x))
    if x <= Config.GAUSS_RECURRENCE_MAX_X:
        return _escalate(label, cfg, stepped=[("backward", lambda d: _gauss_backward(a, b, c, x, d))],
                         fallback=[from_series])
    return _escalate(label, cfg, fixed=[from_series])


def gauss_ratio_enclosure(a: float, b: float, c: float, x: float, cfg: Optional[OracleConfig] = None) -> Enclosure:
    """Enclosure of y(a+1,b+1,c+1,x)/y(a,b,c,x); a, b, c > 0, 0 < x < 1."""
    return _require_converged(f"gauss(a={a}, b={b}, c={c}, x={x})", gauss_ratio_result(a, b, c, x, cfg))


def gauss_H_result(a: float, b: float, c: float, x: float, cfg: Optional[OracleConfig] = None) -> OracleResult:
    check_domain(RatioKind.GAUSS_H, (a, b, c), x)
    return gauss_ratio_result(a, b, c, x, cfg).map(lambda h: 2 * Enclosure.point(a) * b / h)


def gauss_H_enclosure(a: float, b: float, c: float, x: float, cfg: Optional[OracleConfig] = None) -> Enclosure:
    """H = 2c 2F1(a,b;c;x)/2F1(a+1,b+1;c+1;x) = 2ab/h."""
    return _require_converged(f"gauss_H(a={a}, b={b}, c={c}, x={x})", gauss_H_result(a, b, c, x, cfg))


# --- reseeding -----------------------------------------------------------------
def reseeded_result(spec: RatioSpec, cfg: Optional[OracleConfig] = None) -> OracleResult:
    """The backward recurrence for ``spec`` run on a second catalogued bound pair.

    PCF uses (b03, b30) instead of (b21, b12), Bessel I the lambda = 0 / 2
    family members instead of lambda = 1/2, Kummer the shifted lambda(a-1, b-1)
    in place of lambda_tilde. The same pair narrows every intermediate index.
    """
    cfg = _config(cfg)
    check_domain(spec.kind, spec.params, spec.x)
    x = spec.x
    label = f"reseeded {spec.kind.name}{spec.params} x={x}"
    if spec.kind is RatioKind.PCF:
        (n,) = spec.params
        stepped = ("backward", lambda d: _pcf_backward(n, x, d, _pcf_alternate_pair))
    elif spec.kind is RatioKind.BESSEL_I:
        (nu,) = spec.params
        stepped = ("backward", lambda d: _bessel_i_backward(nu, x, d, _bessel_i_alternate_pair))
    elif spec.kind is RatioKind.KUMMER_AB1B1:
        a, b = spec.params
        if a == b:
            return OracleResult(Enclosure.point(1.0), 0, True, "exact")
        stepped = ("backward", lambda d: _kummer_backward(a, b, x, d, _kummer_alternate_pair))
    else:
        raise DomainError(f"no alternate seed pair for {spec.kind.name}")
    return _escalate(label, cfg, stepped=[stepped])
