import math

import pytest

from ratio_bounds.analysis import riccati
from ratio_bounds.analysis.riccati import RiccatiProblem, Endpoint, Verdict, get_registry, run_instances
from ratio_bounds.bounds import pcf
from ratio_bounds.core.errors import ConfigError, SignConditionFailedError
from ratio_bounds.core.types import Side

REGISTRY = get_registry()
REAL_IDS = [i for i in REGISTRY.ids if not i.startswith("mutation.")]
MUTATION_IDS = [i for i in REGISTRY.ids if i.startswith("mutation.")]


def test_registry_contents():
    assert len(REAL_IDS) == 9
    assert len(MUTATION_IDS) == 12
    assert {i.split(".")[1] for i in MUTATION_IDS} == {"pcf", "bessel", "confluent", "gauss"}


def test_alias_resolves():
    assert REGISTRY.get("newbp").id == "pcf.b03.residual"


def test_unknown_instance_and_family():
    with pytest.raises(ConfigError):
        REGISTRY.get("pcf.nothing")
    with pytest.raises(ConfigError):
        REGISTRY.select(family="airy")


def test_select_by_family():
    selected = REGISTRY.select(family="gauss")
    assert {i.family for i in selected} == {"gauss"}
    assert len(selected) == 5


@pytest.mark.parametrize("instance_id", REAL_IDS)
def test_certified_instances_pass(instance_id):
    instance = REGISTRY.get(instance_id)
    report = instance.run()
    assert report.verdict is Verdict.PASS, report.failures[:5]
    assert report.checked > 0
    assert instance.outcome_ok(report)


@pytest.mark.parametrize("instance_id", MUTATION_IDS)
def test_mutations_are_rejected(instance_id):
    instance = REGISTRY.get(instance_id)
    assert instance.mutation
    report = instance.run()
    assert report.verdict is Verdict.FAIL
    assert report.failures
    assert instance.outcome_ok(report)


def test_nullcline_side_is_reported():
    report = REGISTRY.get("pcf.b21.nullcline").run()
    assert report.side is Side.LOWER


def test_newbp_summary():
    report = REGISTRY.get("newbp").run()
    summary = report.summary()
    assert summary["instance"] == "pcf.b03.residual"
    assert summary["verdict"] == "PASS"


def test_characteristic_root_is_the_b21_nullcline():
    n = 2.0
    problem = riccati._pcf_problem(n)
    for x in (-3.0, 0.0, 4.0):
        assert riccati.characteristic_root(problem, x) == pytest.approx(pcf.b21(n, x), rel=1e-14)


def test_characteristic_root_needs_opposite_signs():
    problem = RiccatiProblem("bad", lambda x: 1.0, lambda x: 0.0, lambda x: 1.0, 0.0, 1.0, Endpoint.RIGHT)
    with pytest.raises(SignConditionFailedError):
        riccati.characteristic_root(problem, 0.5)


def test_complex_step_derivative():
    assert riccati.derivative(lambda x: x * x * x, 2.0) == pytest.approx(12.0, rel=1e-15)
    assert riccati.derivative(lambda x: pcf.b12(1.0, x), 0.0) == pytest.approx(0.5, rel=1e-14)


def test_downgrade_only_worsens():
    report = riccati.RiccatiReport("x")
    report.downgrade(Verdict.INCONCLUSIVE)
    report.downgrade(Verdict.PASS)
    assert report.verdict is Verdict.INCONCLUSIVE
    report.downgrade(Verdict.FAIL)
    assert report.verdict is Verdict.FAIL


def test_run_instances_pairs_reports():
    instances = REGISTRY.select(instance_id="mutation.gauss.constant")
    results = run_instances(instances)
    assert len(results) == 1
    instance, report = results[0]
    assert instance.id == "mutation.gauss.constant"
    assert not math.isnan(report.min_margin)


class TestCubicNullcline:
    @pytest.mark.parametrize("n, x", [(1.0, 0.0), (2.0, -3.0), (0.75, 5.0)])
    def test_pcf_root_solves_the_cubic(self, n, x):
        z = riccati.cubic_nullcline_root(n, x, "pcf")
        assert z ** 3 - (0.25 * x * x + n) * z - 0.25 * x == pytest.approx(0.0, abs=1e-10)
        assert z == pytest.approx(float(pcf.cubic_root(n, x)))

    @pytest.mark.parametrize("nu, x", [(0.0, 1.0), (1.5, 0.5), (3.0, 10.0)])
    def test_bessel_root_is_the_largest(self, nu, x):
        psi = riccati.cubic_nullcline_root(nu, x, "bessel")
        s = nu * nu + x * x
        assert ((psi + 1.0) * psi - s) * psi - nu * nu == pytest.approx(0.0, abs=1e-9 * max(1.0, s * psi))
        # the cubic is increasing past its largest root
        assert (3.0 * psi + 2.0) * psi - s > 0.0

    def test_unknown_family(self):
        with pytest.raises(ConfigError):
            riccati.cubic_nullcline_root(1.0, 1.0, "gauss")
