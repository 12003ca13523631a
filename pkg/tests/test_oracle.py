import math

import pytest

from ratio_bounds.bounds import bessel
from ratio_bounds.core.config import OracleConfig
from ratio_bounds.core.errors import DomainError, NotConvergedError
from ratio_bounds.core.types import RatioKind, RatioSpec
from ratio_bounds.oracle import recurrences, series
from ratio_bounds.oracle.dispatch import OracleCache, evaluate_ratio


def _phi_three_halves(x: float) -> float:
    mills = math.exp(0.5 * x * x) * math.sqrt(0.5 * math.pi) * math.erfc(x / math.sqrt(2.0))
    return 1.0 / (1.0 / mills - x)


def _contains(enclosure, value, rel=1e-13):
    return enclosure.contains(value, slack=rel * abs(value))


class TestPcf:
    @pytest.mark.parametrize("n", [0.75, 1.0, 3.0, 10.0])
    def test_value_at_zero(self, n, cfg):
        value = math.sqrt(2.0) * math.gamma(0.5 * n + 0.75) / math.gamma(0.5 * n + 0.25)
        enclosure = recurrences.pcf_ratio_enclosure(n, 0.0, cfg)
        assert _contains(enclosure, value)
        assert enclosure.rel_width <= cfg.target_rel_width

    @pytest.mark.parametrize("x", [-4.0, -1.0, 0.3, 2.0, 5.0])
    def test_three_halves_closed_form(self, x, cfg):
        assert _contains(recurrences.pcf_ratio_enclosure(1.5, x, cfg), _phi_three_halves(x), rel=1e-12)

    @pytest.mark.parametrize("x", [-30.0, -3.0, 0.0, 4.0, 30.0])
    def test_recurrence_links_neighbouring_orders(self, x, cfg):
        n = 2.0
        here = recurrences.pcf_ratio_enclosure(n, x, cfg)
        above = recurrences.pcf_ratio_enclosure(n + 1, x, cfg)
        lifted = x + (n + 0.5) / above
        assert here.overlaps(lifted)

    def test_series_agrees_with_recurrence(self):
        n, x = 2.0, -1.0
        assert series.pcf_ratio_series(n, x).overlaps(recurrences.pcf_ratio_enclosure(n, x))

    def test_domain(self):
        with pytest.raises(DomainError):
            recurrences.pcf_ratio_result(0.5, 1.0)


class TestBessel:
    @pytest.mark.parametrize("x", [0.01, 0.5, 1.0, 10.0, 60.0])
    def test_half_order_i_ratio_is_coth(self, x, cfg):
        assert _contains(recurrences.bessel_i_ratio_enclosure(0.5, x, cfg), 1.0 / math.tanh(x))

    @pytest.mark.parametrize("x", [0.05, 1.0, 30.0])
    def test_k_ratios_closed_forms(self, x, cfg):
        assert _contains(recurrences.bessel_k_ratio_enclosure(0.5, x, cfg), 1.0 + 1.0 / x)
        assert _contains(recurrences.bessel_k_ratio_enclosure(1.5, x, cfg),
                         (x * x + 3 * x + 3) / (x * (x + 1)))

    def test_k_down_at_half_is_exactly_one(self, cfg):
        result = recurrences.k_down_result(0.5, 2.0, cfg)
        assert result.enclosure.lo == result.enclosure.hi == 1.0
        assert result.method == "closed-form"

    def test_k_down_inverts_the_upward_ratio(self, cfg):
        nu, x = 2.0, 1.5
        down = recurrences.k_down_enclosure(nu, x, cfg)
        up = recurrences.bessel_k_ratio_enclosure(nu - 1, x, cfg)
        assert down.overlaps(1 / up)

    def test_k_down_rejects_gap_orders(self):
        with pytest.raises(DomainError):
            recurrences.k_down_result(0.75, 1.0)

    @pytest.mark.parametrize("nu", [0.0, 1.0])
    @pytest.mark.parametrize("x", [0.01, 1.0, 30.0])
    def test_k_down_at_integer_orders_below_one_half_converges(self, nu, x, cfg):
        result = recurrences.k_down_result(nu, x, cfg)
        assert result.converged
        assert result.enclosure.lo > 0.0
        # K_1 > K_0 for every x > 0
        assert (result.enclosure.lo > 1.0) if nu == 0.0 else (result.enclosure.hi < 1.0)

    @pytest.mark.parametrize("nu", [0.0, 1.0])
    @pytest.mark.parametrize("x", [0.05, 2.0, 20.0])
    def test_integer_order_product_sits_above_its_lower_bounds(self, nu, x, cfg):
        enclosure = recurrences.product_enclosure(nu, x, cfg)
        trig, alg = bessel.product_bounds(nu, x)
        assert alg <= trig <= enclosure.lo

    @pytest.mark.parametrize("x", [0.1, 1.0, 25.0])
    def test_half_order_product(self, x, cfg):
        assert _contains(recurrences.product_enclosure(0.5, x, cfg), -math.expm1(-2 * x) / (2 * x), rel=1e-12)


class TestKummer:
    @pytest.mark.parametrize("x", [0.1, 1.0, 10.0, 40.0])
    def test_closed_form_one_two(self, x, cfg):
        value = (math.exp(x) * (x - 1) + 1) / (x * math.expm1(x))
        assert _contains(recurrences.kummer_ratio_enclosure(1.0, 2.0, x, cfg), value, rel=1e-12)

    def test_equal_parameters_short_circuit(self, cfg):
        result = recurrences.kummer_ratio_result(3.0, 3.0, 7.0, cfg)
        assert result.method == "exact"
        assert result.enclosure.lo == result.enclosure.hi == 1.0

    def test_series_and_recurrence_agree(self):
        a, b, x = 0.3, 5.0, 2.0
        assert series.kummer_ratio_series(a, b, x).overlaps(recurrences.kummer_ratio_enclosure(a, b, x))

    def test_derived_directions(self, cfg):
        a, b, x = 1.0, 2.0, 1.0
        h = (math.exp(x) * (x - 1) + 1) / (x * math.expm1(x))
        a1b = recurrences.kummer_a1b_result(a, b, x, cfg).enclosure
        a1b2 = recurrences.kummer_a1b2_result(a, b, x, cfg).enclosure
        H = recurrences.kummer_H_enclosure(a, b, x, cfg)
        assert _contains(a1b, a + x * h, rel=1e-12)
        assert _contains(a1b2, (2 * h - 1) / x, rel=1e-10)
        assert _contains(H, 2 * a / h, rel=1e-12)

    def test_a1b2_at_equal_parameters_uses_series(self, cfg):
        result = recurrences.kummer_a1b2_result(2.0, 2.0, 1.0, cfg)
        assert result.method == "series"

    def test_kummer_series_matches_exponential(self):
        value, err = series.kummer_series(2.0, 2.0, 3.0)
        assert abs(value - math.exp(3.0)) <= err + 1e-15 * math.exp(3.0)

    def test_kummer_series_rejects_negative_x(self):
        with pytest.raises(DomainError):
            series.kummer_series(1.0, 2.0, -1.0)


class TestGauss:
    def test_closed_form_one_one_two(self, cfg):
        x = 0.5
        f = -math.log1p(-x) / x
        derivative = 1.0 / (x * (1.0 - x)) + math.log1p(-x) / (x * x)
        enclosure = recurrences.gauss_ratio_enclosure(1.0, 1.0, 2.0, x, cfg)
        assert _contains(enclosure, derivative / f, rel=1e-12)

    def test_backward_and_series_regions_agree(self):
        a, b, c = 1.0, 2.0, 3.0
        x = 0.3
        recurrence = recurrences.gauss_ratio_enclosure(a, b, c, x)
        assert series.gauss_ratio_series(a, b, c, x).overlaps(recurrence)

    def test_H_form(self, cfg):
        a, b, c, x = 1.0, 2.0, 3.0, 0.2
        h = recurrences.gauss_ratio_enclosure(a, b, c, x, cfg)
        H = recurrences.gauss_H_enclosure(a, b, c, x, cfg)
        assert H.overlaps(2 * a * b / h)

    def test_gauss_series_logarithm(self):
        value, err = series.gauss_series(1.0, 1.0, 2.0, 0.5)
        assert abs(value - 2.0 * math.log(2.0)) <= err + 1e-15


class TestDispatch:
    def test_evaluate_ratio_routes_by_kind(self, cfg):
        result = evaluate_ratio(RatioSpec(RatioKind.BESSEL_I, (0.5,), 1.0), cfg)
        assert _contains(result.enclosure, 1.0 / math.tanh(1.0))
        assert result.converged

    def test_every_kind_has_an_evaluator(self, cfg):
        specs = [
            RatioSpec(RatioKind.PCF, (1.0,), 0.5),
            RatioSpec(RatioKind.BESSEL_I, (1.0,), 0.5),
            RatioSpec(RatioKind.BESSEL_K, (1.0,), 0.5),
            RatioSpec(RatioKind.BESSEL_K_DOWN, (1.0,), 0.5),
            RatioSpec(RatioKind.BESSEL_IK_PRODUCT, (1.0,), 0.5),
            RatioSpec(RatioKind.KUMMER_AB1B1, (1.0, 2.0), 0.5),
            RatioSpec(RatioKind.KUMMER_A1B, (1.0, 2.0), 0.5),
            RatioSpec(RatioKind.KUMMER_A1B2, (1.0, 2.0), 0.5),
            RatioSpec(RatioKind.KUMMER_H, (1.0, 2.0), 0.5),
            RatioSpec(RatioKind.GAUSS, (1.0, 2.0, 3.0), 0.5),
            RatioSpec(RatioKind.GAUSS_H, (1.0, 2.0, 3.0), 0.5),
        ]
        assert {spec.kind for spec in specs} == set(RatioKind)
        for spec in specs:
            result = evaluate_ratio(spec, cfg)
            assert result.enclosure.lo > 0.0

    def test_cache_hits(self, cfg):
        cache = OracleCache()
        spec = RatioSpec(RatioKind.PCF, (2.0,), 1.0)
        first = cache.evaluate(spec, cfg)
        second = cache.evaluate(spec, cfg)
        assert first is second
        assert cache.stats() == {"entries": 1, "hits": 1, "misses": 1}
        cache.clear()
        assert len(cache) == 0

    def test_cache_keys_on_configuration(self, cfg):
        cache = OracleCache()
        spec = RatioSpec(RatioKind.PCF, (2.0,), 1.0)
        cache.evaluate(spec, cfg)
        cache.evaluate(spec, OracleConfig(depth=30, target_rel_width=1e-10, max_depth=400))
        assert len(cache) == 2

    def test_shallow_configuration_reports_not_converged(self):
        shallow = OracleConfig(depth=1, target_rel_width=1e-15, max_depth=1)
        result = recurrences.bessel_i_ratio_result(30.0, 50.0, shallow)
        assert not result.converged
        with pytest.raises(NotConvergedError) as info:
            recurrences.bessel_i_ratio_enclosure(30.0, 50.0, shallow)
        assert info.value.result.enclosure == result.enclosure


class TestScipyCrossCheck:
    """Cross-checks against scipy when the reference extra is installed."""

    @pytest.fixture(autouse=True)
    def _scipy(self):
        self.special = pytest.importorskip("scipy.special")

    @pytest.mark.parametrize("nu", [0.3, 1.0, 4.5, 20.0])
    @pytest.mark.parametrize("x", [0.2, 3.0, 40.0])
    def test_bessel_ratios(self, nu, x, cfg):
        sp = self.special
        i_ratio = sp.ive(nu - 1, x) / sp.ive(nu, x)
        k_ratio = sp.kve(nu + 1, x) / sp.kve(nu, x)
        assert _contains(recurrences.bessel_i_ratio_enclosure(nu, x, cfg), i_ratio, rel=1e-11)
        if nu >= 0.5:
            assert _contains(recurrences.bessel_k_ratio_enclosure(nu, x, cfg), k_ratio, rel=1e-11)

    @pytest.mark.parametrize("a, b", [(0.3, 1.0), (2.0, 5.0), (5.0, 0.3)])
    @pytest.mark.parametrize("x", [0.1, 2.0, 15.0])
    def test_kummer_ratio(self, a, b, x, cfg):
        sp = self.special
        value = a / b * sp.hyp1f1(a + 1, b + 1, x) / sp.hyp1f1(a, b, x)
        assert _contains(recurrences.kummer_ratio_enclosure(a, b, x, cfg), value, rel=1e-10)

    @pytest.mark.parametrize("a, b, c", [(0.5, 1.0, 2.0), (2.0, 3.0, 5.0)])
    @pytest.mark.parametrize("x", [0.1, 0.5, 0.8])
    def test_gauss_ratio(self, a, b, c, x, cfg):
        sp = self.special
        value = a * b / c * sp.hyp2f1(a + 1, b + 1, c + 1, x) / sp.hyp2f1(a, b, c, x)
        assert _contains(recurrences.gauss_ratio_enclosure(a, b, c, x, cfg), value, rel=1e-10)

    @pytest.mark.parametrize("n", [1.0, 2.5, 6.0])
    @pytest.mark.parametrize("x", [-3.0, 0.5, 6.0])
    def test_pcf_ratio(self, n, x, cfg):
        sp = self.special
        # U(a, x) = D_{-a-1/2}(x)
        upper, _ = sp.pbdv(-(n - 1) - 0.5, x)
        lower, _ = sp.pbdv(-n - 0.5, x)
        assert _contains(recurrences.pcf_ratio_enclosure(n, x, cfg), upper / lower, rel=1e-8)

    @pytest.mark.parametrize("x", [0.01, 0.2, 3.0, 40.0])
    def test_k_down_at_orders_zero_and_one(self, x, cfg):
        sp = self.special
        one_over_zero = sp.kve(1, x) / sp.kve(0, x)
        assert _contains(recurrences.k_down_enclosure(0.0, x, cfg), one_over_zero, rel=1e-11)
        assert _contains(recurrences.k_down_enclosure(1.0, x, cfg), 1.0 / one_over_zero, rel=1e-11)


class TestSeedsAndDepth:
    @pytest.mark.parametrize("spec", [
        RatioSpec(RatioKind.PCF, (1.0,), 3.0),
        RatioSpec(RatioKind.PCF, (5.0,), 20.0),
        RatioSpec(RatioKind.BESSEL_I, (0.0,), 2.0),
        RatioSpec(RatioKind.BESSEL_I, (10.0,), 30.0),
        RatioSpec(RatioKind.KUMMER_AB1B1, (0.3, 2.0), 5.0),
        RatioSpec(RatioKind.KUMMER_AB1B1, (5.0, 1.0), 10.0),
    ])
    def test_second_seed_pair_agrees(self, spec, cfg):
        primary = evaluate_ratio(spec, cfg).enclosure
        other = recurrences.reseeded_result(spec, cfg)
        assert other.method.endswith("backward")
        assert primary.overlaps(other.enclosure)

    def test_second_seed_pair_at_equal_kummer_parameters(self, cfg):
        result = recurrences.reseeded_result(RatioSpec(RatioKind.KUMMER_AB1B1, (2.0, 2.0), 4.0), cfg)
        assert result.enclosure.lo == result.enclosure.hi == 1.0

    def test_second_seed_pair_rejects_other_kinds(self, cfg):
        with pytest.raises(DomainError):
            recurrences.reseeded_result(RatioSpec(RatioKind.GAUSS, (1.0, 1.0, 2.0), 0.3), cfg)

    @pytest.mark.parametrize("spec", [
        RatioSpec(RatioKind.KUMMER_AB1B1, (0.3, 2.0), 5.0),
        RatioSpec(RatioKind.PCF, (2.5,), 1.0),
        RatioSpec(RatioKind.BESSEL_I, (1.0,), 4.0),
    ])
    def test_deeper_enclosures_nest(self, spec, cfg):
        def at(depth):
            return OracleConfig(depth=depth, target_rel_width=cfg.target_rel_width, max_depth=depth)

        shallow = evaluate_ratio(spec, at(60)).enclosure
        deep = evaluate_ratio(spec, at(70)).enclosure
        assert deep.is_subset(shallow)

    def test_escalation_keeps_the_narrowed_enclosure(self):
        spec = RatioSpec(RatioKind.PCF, (1.0,), 2.0)
        escalated = evaluate_ratio(spec, OracleConfig(depth=4, target_rel_width=1e-300, max_depth=32))
        single = evaluate_ratio(spec, OracleConfig(depth=32, target_rel_width=1e-300, max_depth=32))
        assert escalated.enclosure.is_subset(single.enclosure)
