import math

import pytest

from ratio_bounds.bounds import gauss
from ratio_bounds.core.errors import DomainError
from ratio_bounds.oracle.recurrences import gauss_H_enclosure, gauss_ratio_enclosure


def h_one_one_two(x: float) -> float:
    """y(2,2,3,x)/y(1,1,2,x), the log derivative of -log(1-x)/x."""
    f = -math.log1p(-x) / x
    derivative = 1.0 / (x * (1.0 - x)) + math.log1p(-x) / (x * x)
    return derivative / f


def test_closed_form_value():
    assert h_one_one_two(0.5) == pytest.approx(0.885390, abs=1e-6)


@pytest.mark.parametrize("x", [0.01, 0.25, 0.5, 0.75, 0.99])
def test_bounds_bracket_closed_form(x):
    value = h_one_one_two(x)
    assert gauss.h_from_H(1.0, 1.0, gauss.upper_H(1.0, 1.0, 2.0, x)) < value
    assert value < gauss.h_from_H(1.0, 1.0, gauss.lower_H(1.0, 1.0, 2.0, x))
    assert value < gauss.lambda_gauss(1.0, 1.0, 2.0, x)


def test_parameter_flags():
    params = gauss.GaussRatioParams(2.0, 3.0, 1.5)
    assert params.d == 6.0
    assert params.monotone
    assert not gauss.GaussRatioParams(5.0, 5.0, 1.0).monotone
    assert gauss.GaussRatioParams(5.0, 5.0, 2.0).extended
    with pytest.raises(DomainError):
        gauss.GaussRatioParams(0.0, 1.0, 1.0)


def test_validity_is_enforced():
    with pytest.raises(DomainError):
        gauss.lower_H(5.0, 5.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        gauss.lambda_gauss(1.0, 1.0, 2.0, 1.0)


@pytest.mark.parametrize("a, b, c", [(0.5, 0.5, 2.0), (1.0, 2.0, 5.0), (2.0, 5.0, 5.0)])
@pytest.mark.parametrize("x", [0.05, 0.3, 0.6, 0.9])
def test_two_sided_H_bounds_against_oracle(a, b, c, x):
    enclosure = gauss_H_enclosure(a, b, c, x)
    assert gauss.lower_H(a, b, c, x) <= enclosure.lo
    assert gauss.upper_H(a, b, c, x) >= enclosure.hi
    assert gauss.lambda_gauss(a, b, c, x) >= gauss_ratio_enclosure(a, b, c, x).hi


def test_h_from_H_swaps_bound_sides():
    assert gauss.h_from_H(2.0, 3.0, 2.0) == pytest.approx(6.0)
    assert gauss.h_from_H(2.0, 3.0, 4.0) < gauss.h_from_H(2.0, 3.0, 3.0)


def test_confluent_limit_gaps_decay_like_one_over_b():
    report = gauss.confluent_limit_check(1.0, 2.0, 1.0)
    assert set(report.slopes) == {"lambda", "lower_H", "upper_H"}
    assert report.passed
    for slope in report.slopes.values():
        assert -1.3 <= slope <= -0.7
    assert report.summary()["B"] == [1e2, 1e3, 1e4, 1e5]


def test_limit_report_fails_on_off_unit_slope():
    report = gauss.LimitCheckReport(1.0, 2.0, 1.0, (1e2, 1e3), slopes={"lambda": -1.1})
    assert report.passed
    report.slopes["lower_H"] = -2.0
    assert not report.passed
    report.slopes["lower_H"] = math.nan
    assert not report.passed
    assert not gauss.LimitCheckReport(1.0, 2.0, 1.0, (1e2,)).passed
