import pytest

from ratio_bounds.analysis.accuracy import (
    CoefficientCheck,
    FitSide,
    TagStatus,
    allowed_exponents,
    certify_accuracy_table,
    check_tag_side,
    confluent_coefficient_checks,
    estimate_order,
    pcf_coefficient_checks,
    pcf_order_zero_oracle,
    zero_window,
)
from ratio_bounds.analysis.catalog import get_catalog
from ratio_bounds.bounds import pcf
from ratio_bounds.core.errors import ConfigError


def _descriptor(bound_id):
    return get_catalog().get(bound_id).descriptor


class TestAllowedExponents:
    def test_pcf_tags_read_minus_then_plus_infinity(self):
        b03 = _descriptor("pcf.b03")
        assert allowed_exponents(b03, FitSide.AT_PLUS_INF) == (-5, -4)
        assert allowed_exponents(b03, FitSide.AT_MINUS_INF) == (1, 2)
        with pytest.raises(ConfigError):
            allowed_exponents(b03, FitSide.AT_ZERO)

    def test_bessel_tags(self):
        row = _descriptor("bessel.I.table1.(2,1)")
        assert allowed_exponents(row, FitSide.AT_ZERO) == (2, 3)
        assert allowed_exponents(row, FitSide.AT_PLUS_INF) == (-1,)
        with pytest.raises(ConfigError):
            allowed_exponents(row, FitSide.AT_MINUS_INF)

    def test_a1b2_tags_shift_by_one_at_infinity(self):
        assert allowed_exponents(_descriptor("confluent.eta"), FitSide.AT_PLUS_INF) == (-3,)
        assert allowed_exponents(_descriptor("confluent.lambda"), FitSide.AT_PLUS_INF) == (-2,)

    def test_trig_bound_overrides_the_powers_at_zero(self):
        trig = _descriptor("bessel.I.trig")
        assert trig.gap_powers_at_zero == (3,)
        assert allowed_exponents(trig, FitSide.AT_ZERO) == (3,)

    def test_untagged_bound(self):
        with pytest.raises(ConfigError):
            allowed_exponents(_descriptor("confluent.ku.lower"), FitSide.AT_PLUS_INF)

    def test_zero_window_is_one_decade(self):
        lo, hi = zero_window(_descriptor("confluent.lambda"))
        assert hi == pytest.approx(10 * lo)
        assert 1e-4 <= lo <= 0.1


class TestFits:
    def test_b21_gap_decays_like_one_over_x(self, cfg, cache):
        fit = estimate_order(get_catalog().get("pcf.b21"), (6.25,), FitSide.AT_PLUS_INF, (30.0, 100.0), cfg, cache)
        assert fit.exponent == pytest.approx(-1.0, abs=0.1)
        assert fit.coefficient < 0.0
        assert fit.points >= 8

    def test_lambda_gap_at_zero(self, cfg, cache):
        fit = estimate_order(get_catalog().get("confluent.lambda"), (2.0, 3.0), FitSide.AT_ZERO, cfg=cfg, cache=cache)
        assert fit.exponent == pytest.approx(1.0, abs=0.3)

    def test_non_zero_side_needs_a_window(self, cfg, cache):
        with pytest.raises(ConfigError):
            estimate_order(get_catalog().get("pcf.b21"), (6.25,), FitSide.AT_PLUS_INF, cfg=cfg, cache=cache)

    def test_tag_side_match(self, cfg, cache):
        check = check_tag_side(get_catalog().get("bessel.I.table1.(2,1)"), FitSide.AT_PLUS_INF, cfg, cache)
        assert check.status is TagStatus.MATCH
        row = check.as_row()
        assert row["status"] == "MATCH"
        assert row["allowed"] == [-1]


    def test_trig_bound_gap_at_zero_matches(self, cfg, cache):
        check = check_tag_side(get_catalog().get("bessel.I.trig"), FitSide.AT_ZERO, cfg, cache)
        assert check.status is TagStatus.MATCH, check.as_row()

    @pytest.mark.parametrize("x", [0.5, 3.0, 20.0])
    def test_order_zero_oracle_steps_down_from_order_one(self, x, cfg, cache):
        result = pcf_order_zero_oracle(cfg, cache)(x)
        assert result.method.endswith("+step")
        assert x < result.enclosure.lo
        assert result.enclosure.hi < x + 0.5 / pcf.b21(1.0, x)


class TestCertification:
    def test_single_bound(self, cfg, cache):
        report = certify_accuracy_table(bound_ids=["pcf.b21"], cfg=cfg, cache=cache)
        assert {t.side for t in report.tags} == {FitSide.AT_MINUS_INF, FitSide.AT_PLUS_INF}
        assert report.coefficients == []
        assert report.passed, [t.as_row() for t in report.tags]

    def test_gauss_coefficients(self, cfg, cache):
        report = certify_accuracy_table("gauss", cfg=cfg, cache=cache)
        assert report.tags == []
        assert len(report.coefficients) == 4
        assert all(c.passed for c in report.coefficients), [c.as_row() for c in report.coefficients]
        assert report.summary()["passed"]

    def test_coefficient_check_tolerance(self):
        assert CoefficientCheck("c", 2.0, 2.01, 0.01).passed
        assert not CoefficientCheck("c", 2.0, 2.1, 0.01).passed
        assert not CoefficientCheck("c", 2.0, 2.0, 0.01, error="OVERPRECISION").passed

    @pytest.mark.parametrize("suite", [pcf_coefficient_checks, confluent_coefficient_checks])
    def test_coefficient_suites(self, suite, cfg, cache):
        checks = suite(cfg, cache)
        assert checks
        assert all(c.passed for c in checks), [c.as_row() for c in checks if not c.passed]

    def test_pcf_coefficients_cover_order_zero(self, cfg, cache):
        names = [c.name for c in pcf_coefficient_checks(cfg, cache)]
        assert any("n=0" in name for name in names)

    def test_whole_table_certifies(self, cfg, cache):
        report = certify_accuracy_table(cfg=cfg, cache=cache)
        assert report.tags
        assert not report.mismatches, [t.as_row() for t in report.mismatches]
        assert report.passed, report.summary()
