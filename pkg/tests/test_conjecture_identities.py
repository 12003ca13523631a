import math

import pytest

from ratio_bounds.analysis import conjecture, identities
from ratio_bounds.core.errors import ConfigError, DomainError
from ratio_bounds.oracle.recurrences import pcf_ratio_enclosure

XS = [-4.0, -1.0, 0.0, 1.0, 4.0, 10.0, 20.0]


class TestTower:
    def test_rejects_bad_arguments(self):
        with pytest.raises(ConfigError):
            conjecture.double_ratio_tower(0.5, 3, XS)
        with pytest.raises(ConfigError):
            conjecture.double_ratio_tower(1.0, 0, XS)

    def test_first_levels(self, cfg, cache):
        tower = conjecture.double_ratio_tower(1.0, 3, XS, cfg, cache)
        assert tower.k_max == 3
        first = tower.level(1).values
        second = tower.level(2).values
        for x, phi, ratio in zip(XS, first, second):
            assert phi.overlaps(pcf_ratio_enclosure(1.0, x, cfg))
            assert ratio.overlaps(pcf_ratio_enclosure(1.0, x, cfg) / pcf_ratio_enclosure(2.0, x, cfg))

    def test_observed_properties(self, cfg, cache):
        tower = conjecture.double_ratio_tower(2.0, 4, XS, cfg, cache)
        assert tower.all_observed, tower.summary()
        names = {o.name for o in tower.level(3).observations}
        assert names == {"positive", "increasing in x", "below one", "approaches one at the right end",
                         "R[3] > R[2]"}
        assert tower.level(2).observation("R[2] > R[1]") is None

    def test_rows_are_flat_and_ordered(self, cfg, cache):
        tower = conjecture.double_ratio_tower(1.0, 2, [1.0, 0.0], cfg, cache)
        rows = tower.rows()
        assert [(r["k"], r["x"]) for r in rows] == [(1, 0.0), (1, 1.0), (2, 0.0), (2, 1.0)]
        assert all(r["lo"] <= r["mid"] <= r["hi"] for r in rows)

    def test_explore_shares_the_cache(self, cfg, cache):
        towers = conjecture.explore([1.0, 2.0], 2, [0.0, 1.0], cfg, cache)
        assert set(towers) == {1.0, 2.0}
        # Phi_2 is needed by both towers
        assert cache.stats()["hits"] > 0

    def test_observation_bookkeeping(self):
        observation = conjecture.Observation("positive")
        observation.record(False, True, "x=0")
        observation.record(True, False, "x=1")
        assert not observation.holds
        assert observation.undecided == 1
        assert observation.summary()["violations"] == ["x=1"]


class TestIdentities:
    def test_bessel_parameters(self):
        assert identities.bessel_parameters(1.5) == (1.0, 2.0)

    @pytest.mark.parametrize("nu, z", [(0.75, 0.01), (1.0, 1.0), (1.5, 3.0), (5.0, 10.0)])
    def test_kummer_and_bessel_oracles_agree(self, nu, z, cfg, cache):
        report = identities.bessel_consistency_check(nu, z, cfg, cache)
        assert report.agree, report.summary()

    def test_half_integer_closed_form(self, cfg, cache):
        # I_{3/2}/I_{1/2} = coth z - 1/z
        z = 1.0
        report = identities.bessel_consistency_check(1.5, z, cfg, cache)
        assert report.kummer_side.contains(1.0 / math.tanh(z) - 1.0 / z, slack=1e-12)

    def test_consistency_domain(self):
        with pytest.raises(DomainError):
            identities.bessel_consistency_check(0.5, 1.0)
        with pytest.raises(DomainError):
            identities.bessel_consistency_check(1.0, 0.0)

    def test_consistency_suite(self, cfg, cache):
        check = identities.bessel_consistency_suite([0.75, 2.0], [0.1, 1.0, 5.0], cfg, cache)
        assert check.checked == 6
        assert check.passed, check.failures

    def test_eta_specialization(self):
        check = identities.eta_specialization_check()
        assert check.passed, check.failures
        assert check.details["max_relative_deviation"] <= identities.IDENTITY_TOLERANCE

    def test_product_constant(self, cfg, cache):
        result = identities.product_constant_exploration((0.0, 0.5, 2.0), [0.05, 0.5, 2.0, 20.0], cfg, cache)
        assert result.points == 12
        assert result.proven_constant_holds
        assert result.conjectured_constant_observed
        assert result.summary()["skipped"] == 0

    def test_product_constant_tends_to_minus_quarter(self, cfg, cache):
        result = identities.product_constant_exploration((0.5,), [40.0], cfg, cache)
        assert result.max_constant == pytest.approx(-0.25, abs=1e-2)
