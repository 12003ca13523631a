"""
Numerical certification of bounds obtained from first-order ODEs.

Two checkers are provided:

* :func:`check_nullcline_conditions` for Riccati equations
  ``h' = a(x) + b(x) h + c(x) h^2`` with ``a c < 0``. The positive root
  ``lambda`` of ``a + b y + c y^2`` bounds ``h`` from below when ``c`` and
  ``lambda'`` share a sign and from above otherwise, given the endpoint
  conditions recorded with the instance.
* :func:`check_residual_sign` for ``phi' = P(x, phi)`` and a candidate
  ``lambda``. With ``delta = lambda - phi`` and
  ``Delta = lambda' - P(x, lambda)``, a Delta of constant sign matching the
  recorded endpoint sign of delta keeps delta from changing sign.

Both sample a grid; they certify numerical evidence with explicit margins and
never prove anything. Derivatives of candidates are taken by complex step, so
every bound formula used here must accept a complex ``x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..bounds import bessel, confluent, gauss, pcf
from ..core.config import Config
from ..core.enclosure import sqrt
from ..core.errors import ConfigError, DiscriminantError, RatioBoundsError, SignConditionFailedError
from ..core.grid import linear_points, log_points
from ..core.types import Side
from ..utils.logging_config import get_riccati_logger

logger = get_riccati_logger()

Coefficient = Callable[[float], float]
Candidate = Callable[[complex], complex]
RhsTerms = Callable[[float, float], Sequence[float]]

COMPLEX_STEP = 1e-20


class Endpoint(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class RiccatiProblem:
    """h' = a(x) + b(x) h + c(x) h^2 on (lo, hi)."""

    name: str
    a: Coefficient
    b: Coefficient
    c: Coefficient
    lo: float
    hi: float
    endpoint: Endpoint
    endpoint_note: str = ""


@dataclass(frozen=True)
class ResidualProblem:
    """phi' = P(x, phi); ``terms(x, y)`` are the summands of P."""

    name: str
    terms: RhsTerms
    candidate: Candidate
    lo: float
    hi: float
    endpoint: Endpoint
    endpoint_sign: int
    endpoint_note: str = ""

    def rhs(self, x: float, y: float) -> float:
        return math.fsum(self.terms(x, y))


@dataclass
class RiccatiReport:
    instance: str
    verdict: Verdict = Verdict.PASS
    checked: int = 0
    side: Optional[Side] = None
    min_margin: float = math.inf
    worst_x: Optional[float] = None
    failures: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def downgrade(self, verdict: Verdict) -> None:
        order = [Verdict.PASS, Verdict.INCONCLUSIVE, Verdict.FAIL]
        if order.index(verdict) > order.index(self.verdict):
            self.verdict = verdict

    def summary(self) -> dict:
        return {
            "instance": self.instance,
            "verdict": self.verdict.value,
            "checked": self.checked,
            "side": self.side.value if self.side else None,
            "min_margin": self.min_margin,
            "worst_x": self.worst_x,
            "failures": list(self.failures[:20]),
            "notes": list(self.notes),
        }


def derivative(fn: Candidate, x: float) -> float:
    """Complex-step derivative; exact to rounding for analytic formulas."""
    step = COMPLEX_STEP * max(1.0, abs(x))
    return fn(complex(x, step)).imag / step


# --- nullclines ----------------------------------------------------------------
def characteristic_root(problem: RiccatiProblem, x: float) -> float:
    """The positive root of a + b y + c y^2 = 0 at x; requires a c < 0."""
    a, b, c = problem.a(x), problem.b(x), problem.c(x)
    if not a * c < 0.0:
        raise SignConditionFailedError(f"{problem.name}: a*c = {a * c!r} is not negative at x={x}")
    sign = 1.0 if c > 0.0 else -1.0
    a, b, c = a * sign, b * sign, c * sign
    root = math.sqrt(b * b - 4 * a * c)
    if b > 0.0:
        return -2 * a / (b + root)
    return (root - b) / (2 * c)


def check_nullcline_conditions(problem: RiccatiProblem, xs: Sequence[float],
                               expected: Optional[Side] = None,
                               reference: Optional[Callable[[float], float]] = None) -> RiccatiReport:
    """Re-derive the side of the nullcline bound from the signs of c and lambda'.

    Args:
        expected: The side the catalogue claims; a different derived side fails
        reference: Closed-form bound the root should reproduce (relative 1e-12)
    """
    report = RiccatiReport(problem.name)
    report.notes.append(f"endpoint conditions at the {problem.endpoint.value} end: {problem.endpoint_note}")
    xs = [x for x in xs if problem.lo < x < problem.hi]
    roots, c_signs = [], set()
    for x in xs:
        try:
            roots.append(characteristic_root(problem, x))
        except SignConditionFailedError as exc:
            report.failures.append(str(exc))
            report.downgrade(Verdict.FAIL)
            continue
        c_signs.add(1 if problem.c(x) > 0.0 else -1)
        report.checked += 1
        if reference is not None:
            value = reference(x)
            if abs(value - roots[-1]) > 1e-12 * max(abs(value), 1.0):
                report.failures.append(f"root {roots[-1]!r} differs from the closed form {value!r} at x={x}")
                report.downgrade(Verdict.FAIL)
    if report.verdict is Verdict.FAIL:
        return report
    if len(c_signs) != 1:
        report.failures.append("c(x) changes sign on the grid")
        report.downgrade(Verdict.FAIL)
        return report

    steps = np.diff(np.asarray(roots))
    noise = Config.RESIDUAL_ULPS * np.spacing(np.maximum(np.abs(roots[:-1]), np.abs(roots[1:])))
    rising = int(np.sum(steps > noise))
    falling = int(np.sum(steps < -noise))
    if rising and falling:
        report.notes.append(f"lambda' changes sign ({rising} rising, {falling} falling steps)")
        report.downgrade(Verdict.INCONCLUSIVE)
        return report
    if not rising and not falling:
        report.notes.append("lambda is constant on the grid")
        report.downgrade(Verdict.INCONCLUSIVE)
        return report

    c_sign = c_signs.pop()
    slope_sign = 1 if rising else -1
    report.side = Side.LOWER if c_sign * slope_sign > 0 else Side.UPPER
    report.notes.append(f"c {'>' if c_sign > 0 else '<'} 0 and lambda {'increasing' if rising else 'decreasing'}")
    if expected is not None and report.side is not expected:
        report.failures.append(f"derived side {report.side.value} but the catalogue claims {expected.value}")
        report.downgrade(Verdict.FAIL)
    return report


# --- residual sign -------------------------------------------------------------
def _residual(problem: ResidualProblem, x: float, required: int) -> Tuple[float, float]:
    """Sign-adjusted Delta at x and its rounding scale."""
    value = problem.candidate(x)
    value = value.real if isinstance(value, complex) else float(value)
    slope = derivative(problem.candidate, x)
    terms = problem.terms(x, value)
    delta = slope - math.fsum(terms)
    scale = abs(slope) + sum(abs(t) for t in terms)
    return required * delta, scale


def _evaluate(problem: ResidualProblem, xs: Sequence[float], required: int, report: RiccatiReport):
    samples = []
    for x in xs:
        try:
            adjusted, scale = _residual(problem, x, required)
        except RatioBoundsError as exc:
            report.failures.append(f"candidate undefined at x={x} ({exc.code})")
            report.downgrade(Verdict.FAIL)
            continue
        if not math.isfinite(adjusted):
            report.failures.append(f"non-finite residual at x={x}")
            report.downgrade(Verdict.FAIL)
            continue
        samples.append((x, adjusted, scale))
    return samples


def check_residual_sign(problem: ResidualProblem, xs: Sequence[float],
                        refine: int = Config.RICCATI_REFINE) -> RiccatiReport:
    """Check that Delta keeps the sign the endpoint behaviour of delta requires.

    At the left end the condition is delta(lo+) Delta > 0, at the right end
    delta(hi-) Delta < 0. Either way delta keeps its endpoint sign, so the
    candidate is an upper bound when that sign is positive.
    """
    report = RiccatiReport(problem.name)
    required = problem.endpoint_sign if problem.endpoint is Endpoint.LEFT else -problem.endpoint_sign
    report.notes.append(f"delta at the {problem.endpoint.value} end has sign {problem.endpoint_sign:+d}: "
                        f"{problem.endpoint_note}")
    xs = sorted(x for x in xs if problem.lo < x < problem.hi)
    samples = _evaluate(problem, xs, required, report)
    if samples and refine > 1:
        worst = min(range(len(samples)), key=lambda i: samples[i][1] / max(samples[i][2], 1e-300))
        left = samples[max(worst - 1, 0)][0]
        right = samples[min(worst + 1, len(samples) - 1)][0]
        if right > left:
            extra = linear_points(left, right, 4 * refine + 1)[1:-1]
            samples += _evaluate(problem, [float(x) for x in extra], required, report)
    report.checked = len(samples)

    for x, adjusted, scale in samples:
        margin = Config.RESIDUAL_ULPS * math.ulp(scale)
        relative = adjusted / scale if scale > 0.0 else adjusted
        if relative < report.min_margin:
            report.min_margin, report.worst_x = relative, x
        if adjusted < -margin:
            report.failures.append(f"Delta has the wrong sign at x={x!r} (relative {relative:.3e})")
            report.downgrade(Verdict.FAIL)
        elif adjusted <= margin:
            report.downgrade(Verdict.INCONCLUSIVE)
    if report.verdict is Verdict.PASS:
        report.side = Side.UPPER if problem.endpoint_sign > 0 else Side.LOWER
    return report


# --- cubic nullclines ----------------------------------------------------------
def cubic_nullcline_root(parameter: float, x: float, family: str) -> float:
    """Largest real root of the cubic nullcline of the double-ratio equation.

    ``family`` is "pcf" (z^3 - (x^2/4 + n) z - x/4) or "bessel"
    (psi^3 + psi^2 - (nu^2 + x^2) psi - nu^2). Raises DiscriminantError when
    the cubic does not have three real roots.
    """
    if family == "pcf":
        p = -(0.25 * x * x + parameter)
        q = -0.25 * x
        discriminant = -(4 * p ** 3 + 27 * q * q)
        if discriminant < 0.0:
            raise DiscriminantError(f"PCF cubic at n={parameter}, x={x} has one real root")
        return float(pcf.cubic_root(parameter, x))
    if family == "bessel":
        s = parameter * parameter + x * x
        nu2 = parameter * parameter
        discriminant = 18 * s * nu2 + 4 * nu2 + s * s + 4 * s ** 3 - 27 * nu2 * nu2
        if discriminant < 0.0:
            raise DiscriminantError(f"Bessel cubic at nu={parameter}, x={x} has one real root")
        return bessel.cubic_roots(parameter, x)[0]
    raise ConfigError(f"cubic nullclines exist for 'pcf' and 'bessel', got {family!r}")


# --- registry ------------------------------------------------------------------
@dataclass(frozen=True)
class RiccatiInstance:
    """One registered check: a problem builder per parameter tuple plus its x samples."""

    id: str
    family: str
    description: str
    params: Tuple[Tuple[float, ...], ...]
    xs: Tuple[float, ...]
    build: Callable[..., object]
    expected: Verdict = Verdict.PASS
    side: Optional[Side] = None
    reference: Optional[Callable[..., float]] = None

    @property
    def mutation(self) -> bool:
        return self.expected is Verdict.FAIL

    def run(self) -> RiccatiReport:
        combined = RiccatiReport(self.id)
        for params in self.params:
            problem = self.build(*params)
            if isinstance(problem, RiccatiProblem):
                ref = (lambda x, p=params: self.reference(*p, x)) if self.reference else None
                report = check_nullcline_conditions(problem, self.xs, self.side, ref)
            else:
                report = check_residual_sign(problem, self.xs)
            combined.checked += report.checked
            combined.downgrade(report.verdict)
            combined.failures += [f"{params}: {f}" for f in report.failures]
            combined.notes += [f"{params}: {n}" for n in report.notes]
            if report.min_margin < combined.min_margin:
                combined.min_margin, combined.worst_x = report.min_margin, report.worst_x
            combined.side = combined.side or report.side
        return combined

    def outcome_ok(self, report: RiccatiReport) -> bool:
        return report.verdict is self.expected


def _pcf_problem(n: float) -> RiccatiProblem:
    return RiccatiProblem(f"pcf n={n}", lambda x: -(n - 0.5), lambda x: -x, lambda x: 1.0, -math.inf, math.inf,
                          Endpoint.RIGHT, "Phi_n(x) ~ x > 0 and Phi_n' lambda' > 0 as x -> +inf")


def _pcf_terms(n: float) -> RhsTerms:
    return lambda x, y: (y * y, -x * y, -(n - 0.5))


def _pcf_residual(n: float, candidate: Candidate, name: str) -> ResidualProblem:
    return ResidualProblem(name, _pcf_terms(n), candidate, -math.inf, math.inf, Endpoint.RIGHT, -1,
                           "Phi_n - b03 = (n+1/2)(n+3/2)/x^5 + O(x^-6) at +inf")


def _b03_inflated(n: float) -> Candidate:
    def fn(x):
        root = sqrt(1.1 * x * x + 4 * n + 6)
        return ((n + 2.5) * x + (n + 0.5) * root) / (2 * (n + 1.5))
    return fn


def _bessel_problem(nu: float) -> RiccatiProblem:
    return RiccatiProblem(f"bessel nu={nu}", lambda x: 1.0, lambda x: (2 * nu - 1) / x, lambda x: -1.0,
                          0.0, math.inf, Endpoint.LEFT, "Phi_nu ~ 2 nu / x > 0 and decreasing as x -> 0+")


def _bessel_residual(nu: float, candidate: Candidate, name: str) -> ResidualProblem:
    return ResidualProblem(name, lambda x, y: (1.0, (2 * nu - 1) * y / x, -y * y), candidate,
                           0.0, math.inf, Endpoint.LEFT, -1, "lambda - Phi_nu ~ -1/x as x -> 0+")


def _kummer_problem(a: float, b: float) -> RiccatiProblem:
    return RiccatiProblem(f"kummer a={a} b={b}", lambda x: a / x, lambda x: 1 - b / x, lambda x: -1.0,
                          0.0, math.inf, Endpoint.LEFT, "h(0+) = a/b > 0 with h' and lambda' of the sign of b - a")


def _kummer_terms(a: float, b: float) -> RhsTerms:
    return lambda x, y: (a / x, y, -b * y / x, -y * y)


def _kummer_residual(a: float, b: float, candidate: Candidate, name: str) -> ResidualProblem:
    # In this normalisation Delta keeps the sign of a - b on (0, inf).
    return ResidualProblem(name, _kummer_terms(a, b), candidate, 0.0, math.inf, Endpoint.LEFT,
                           int(math.copysign(1, a - b)),
                           "lambda(a-1,b-1,x) - h(a,b,x) -> (a-b)/((b-1)b) as x -> 0+")


def _gauss_problem(a: float, b: float, c: float) -> RiccatiProblem:
    d = a + b + 1
    return RiccatiProblem(f"gauss a={a} b={b} c={c}", lambda x: a * b / (x * (1 - x)),
                          lambda x: -(c - d * x) / (x * (1 - x)), lambda x: -1.0, 0.0, 1.0, Endpoint.LEFT,
                          "h(0+) = ab/c > 0 and h increasing when c > ab/(a+b+1)")


def _gauss_residual(a: float, b: float, c: float, candidate: Candidate, name: str) -> ResidualProblem:
    d = a + b + 1

    def terms(x, y):
        w = x * (1 - x)
        return (a * b / w, -c * y / w, d * x * y / w, -y * y)

    return ResidualProblem(name, terms, candidate, 0.0, 1.0, Endpoint.LEFT, +1,
                           "lambda - h = ab/c (cd - ab) x / (c^2 (c+1)) + O(x^2) > 0 as x -> 0+")


_PCF_X = tuple(float(v) for v in linear_points(-50.0, 50.0, Config.RICCATI_POINTS))
_POSITIVE_X = tuple(float(v) for v in log_points(1e-3, 100.0, Config.RICCATI_POINTS))
_UNIT_X = tuple(float(v) for v in linear_points(1e-3, 0.999, Config.RICCATI_POINTS))

_PCF_N = ((0.6,), (1.0,), (2.0,), (5.0,), (10.0,))
_NEWBP_N = ((-0.4,), (0.0,), (1.0,), (5.0,))
_BESSEL_NU = ((0.75,), (1.0,), (2.0,), (5.0,))
_KUMMER_AB = ((0.3, 1.0), (1.0, 2.0), (1.0, 5.0), (2.0, 1.0), (5.0, 0.3))
_KUMMER_03_AB = ((2.0, 3.0), (1.5, 4.0), (3.0, 2.0), (5.0, 1.5))
_GAUSS_ABC = ((1.0, 1.0, 2.0), (0.5, 2.0, 1.0), (2.0, 3.0, 3.0))


def _kummer_lambda_reference(a: float, b: float, x: float) -> float:
    return confluent.lambda_kummer(a, b, x)


def _instances() -> List[RiccatiInstance]:
    return [
        RiccatiInstance(
            "pcf.b21.nullcline", "pcf", "b21 is the positive nullcline; c > 0 and lambda' > 0 give a lower bound",
            _PCF_N, _PCF_X, _pcf_problem, side=Side.LOWER, reference=pcf.b21),
        RiccatiInstance(
            "pcf.b03.residual", "pcf", "b03 lower bound from the residual sign (Delta > 0 for n > -1/2)",
            _NEWBP_N, _PCF_X, lambda n: _pcf_residual(n, lambda x: pcf.b03(n, x), f"b03 n={n}")),
        RiccatiInstance(
            "bessel.i_lower_02.nullcline", "bessel", "(0,2) lower bound of I_(nu-1)/I_nu as the positive nullcline",
            _BESSEL_NU, _POSITIVE_X, _bessel_problem, side=Side.LOWER, reference=bessel.i_lower_02),
        RiccatiInstance(
            "bessel.i_lower_02.residual", "bessel", "the same bound through the residual sign",
            _BESSEL_NU, _POSITIVE_X,
            lambda nu: _bessel_residual(nu, lambda x: bessel.i_lower_02(nu, x), f"i_lower_02 nu={nu}")),
        RiccatiInstance(
            "confluent.lambda.nullcline", "confluent", "lambda(a,b,x) bounds h above when b > a, below when b < a",
            ((1.0, 2.0), (0.3, 1.0), (1.0, 5.0)), _POSITIVE_X, _kummer_problem, side=Side.UPPER,
            reference=_kummer_lambda_reference),
        RiccatiInstance(
            "confluent.lambda.nullcline.b_below_a", "confluent", "lambda(a,b,x) as a lower bound when b < a",
            ((2.0, 1.0), (5.0, 0.3)), _POSITIVE_X, _kummer_problem, side=Side.LOWER,
            reference=_kummer_lambda_reference),
        RiccatiInstance(
            "confluent.b03.residual", "confluent", "lambda(a-1,b-1,x) from the residual sign, a, b > 1",
            _KUMMER_03_AB, _POSITIVE_X,
            lambda a, b: _kummer_residual(a, b, lambda x: confluent.b03_confluent(a, b, x), f"b03 a={a} b={b}")),
        RiccatiInstance(
            "gauss.lambda.nullcline", "gauss", "lambda_gauss bounds h above on (0, 1) when c > ab/(a+b+1)",
            _GAUSS_ABC, _UNIT_X, _gauss_problem, side=Side.UPPER, reference=gauss.lambda_gauss),
        RiccatiInstance(
            "gauss.lambda.residual", "gauss", "the same bound through the residual sign",
            _GAUSS_ABC, _UNIT_X,
            lambda a, b, c: _gauss_residual(a, b, c, lambda x: gauss.lambda_gauss(a, b, c, x),
                                            f"lambda_gauss ({a},{b},{c})")),
    ] + _mutations()


def _mutations() -> List[RiccatiInstance]:
    """Candidates that are not bounds; each must FAIL."""

    def mutation(id_, family, description, params, xs, build):
        return RiccatiInstance(f"mutation.{family}.{id_}", family, description, params, xs, build,
                               expected=Verdict.FAIL)

    n1 = ((1.0,),)
    nu1 = ((1.0,),)
    ab = ((2.0, 3.0),)
    abc = ((1.0, 1.0, 2.0),)
    return [
        mutation("b03-inflated-gamma", "pcf", "b03 with x^2 under the root scaled by 1.1", n1, _PCF_X,
                 lambda n: _pcf_residual(n, _b03_inflated(n), "b03 inflated")),
        mutation("b12-as-lower", "pcf", "the upper bound b12 in place of b03", n1, _PCF_X,
                 lambda n: _pcf_residual(n, lambda x: pcf.b12(n, x), "b12")),
        mutation("b03-scaled", "pcf", "1.01 b03", n1, _PCF_X,
                 lambda n: _pcf_residual(n, lambda x: 1.01 * pcf.b03(n, x), "1.01 b03")),
        mutation("alpha-shift", "bessel", "(nu + sqrt(nu^2 + x^2))/x in place of the (0,2) bound", nu1, _POSITIVE_X,
                 lambda nu: _bessel_residual(nu, lambda x: (nu + sqrt(nu * nu + x * x)) / x, "alpha shift")),
        mutation("scaled", "bessel", "1.05 times the (0,2) bound", nu1, _POSITIVE_X,
                 lambda nu: _bessel_residual(nu, lambda x: 1.05 * bessel.i_lower_02(nu, x), "1.05 i_lower_02")),
        mutation("upper-as-lower", "bessel", "the (1,1) upper bound claimed as a lower bound", nu1, _POSITIVE_X,
                 lambda nu: _bessel_residual(nu, lambda x: bessel.i_upper_11(nu, x), "i_upper_11")),
        mutation("b03-scaled", "confluent", "1.01 lambda(a-1,b-1,x)", ab, _POSITIVE_X,
                 lambda a, b: _kummer_residual(a, b, lambda x: 1.01 * confluent.b03_confluent(a, b, x), "scaled")),
        mutation("lambda-as-lower", "confluent", "the upper bound lambda(a,b,x) in place of b03", ab, _POSITIVE_X,
                 lambda a, b: _kummer_residual(a, b, lambda x: confluent.lambda_kummer(a, b, x), "lambda")),
        mutation("shift-up", "confluent", "lambda(a+1,b+1,x) in place of b03", ab, _POSITIVE_X,
                 lambda a, b: _kummer_residual(a, b, lambda x: confluent.lambda_kummer(a + 1, b + 1, x), "shift")),
        mutation("scaled-down", "gauss", "0.99 lambda_gauss", abc, _UNIT_X,
                 lambda a, b, c: _gauss_residual(a, b, c, lambda x: 0.99 * gauss.lambda_gauss(a, b, c, x), "0.99")),
        mutation("constant", "gauss", "the x -> 0 limit ab/c", abc, _UNIT_X,
                 lambda a, b, c: _gauss_residual(a, b, c, lambda x: a * b / c + 0.0 * x, "ab/c")),
        mutation("c-shift", "gauss", "lambda_gauss(a, b, c+1, x)", abc, _UNIT_X,
                 lambda a, b, c: _gauss_residual(a, b, c, lambda x: gauss.lambda_gauss(a, b, c + 1, x), "c+1")),
    ]


ALIASES = {"newbp": "pcf.b03.residual"}


class RiccatiRegistry:
    """Registered instances addressable by id (or alias) and family."""

    def __init__(self, instances: Sequence[RiccatiInstance]):
        self._instances: Dict[str, RiccatiInstance] = {}
        for instance in instances:
            if instance.id in self._instances:
                raise ConfigError(f"duplicate Riccati instance {instance.id!r}")
            self._instances[instance.id] = instance

    def get(self, instance_id: str) -> RiccatiInstance:
        key = ALIASES.get(instance_id, instance_id)
        try:
            return self._instances[key]
        except KeyError:
            raise ConfigError(f"unknown Riccati instance {instance_id!r}") from None

    def select(self, family: Optional[str] = None, instance_id: Optional[str] = None) -> List[RiccatiInstance]:
        if instance_id is not None:
            return [self.get(instance_id)]
        if family is not None and family not in Config.FAMILIES:
            raise ConfigError(f"unknown family {family!r}; expected one of {', '.join(Config.FAMILIES)}")
        return [i for i in self._instances.values() if family is None or i.family == family]

    @property
    def ids(self) -> List[str]:
        return list(self._instances)

    def __len__(self) -> int:
        return len(self._instances)


def get_registry() -> RiccatiRegistry:
    return RiccatiRegistry(_instances())


def run_instances(instances: Sequence[RiccatiInstance]) -> List[Tuple[RiccatiInstance, RiccatiReport]]:
    results = []
    for instance in instances:
        report = instance.run()
        ok = instance.outcome_ok(report)
        icon = Config.LOG_ICONS['success'] if ok else Config.LOG_ICONS['error']
        logger.debug(f"{icon} {instance.id}: {report.verdict.value} (expected {instance.expected.value}, "
                     f"{report.checked} points, min margin {report.min_margin:.3e})")
        results.append((instance, report))
    return results
