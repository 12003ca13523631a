import math

import pytest

from ratio_bounds.core.enclosure import Enclosure, enclosure_div, real_part, sqrt
from ratio_bounds.core.errors import (
    DivisionContainsZeroError,
    EmptyIntersectionError,
    EnclosureError,
    NegativeSqrtError,
)


class TestConstruction:
    def test_rejects_reversed_or_nan(self):
        with pytest.raises(EnclosureError):
            Enclosure(2.0, 1.0)
        with pytest.raises(EnclosureError):
            Enclosure(math.nan, 1.0)

    def test_point_and_ordered(self):
        assert Enclosure.point(1.5).width == 0.0
        e = Enclosure.ordered(3.0, 1.0)
        assert (e.lo, e.hi) == (1.0, 3.0)

    def test_around_rounds_outward(self):
        e = Enclosure.around(1.0, 0.1)
        assert e.lo <= 0.9
        assert e.hi >= 1.1

    def test_rel_width(self):
        assert Enclosure(1.0, 1.0).rel_width == 0.0
        assert Enclosure(-1.0, 1.0).rel_width == math.inf
        assert Enclosure(1.0, 2.0).rel_width == pytest.approx(0.5)


class TestArithmetic:
    def test_sum_contains_exact_value(self):
        e = Enclosure.point(0.1) + Enclosure.point(0.2)
        assert e.lo <= 0.30000000000000004 and 0.3 <= e.hi

    def test_mixed_signs_product(self):
        e = Enclosure(-1.0, 2.0) * Enclosure(-3.0, 1.0)
        assert e.lo <= -6.0 and e.hi >= 3.0

    def test_division_contains_exact_third(self):
        e = enclosure_div(1.0, 3.0)
        assert e.lo <= 1.0 / 3.0 <= e.hi
        assert e.width <= 4 * math.ulp(1.0 / 3.0)

    def test_division_by_zero_straddling(self):
        with pytest.raises(DivisionContainsZeroError) as info:
            Enclosure(1.0, 2.0) / Enclosure(-1.0, 1.0)
        assert info.value.code == "DIVISION_CONTAINS_ZERO"

    def test_reflected_operators(self):
        e = 1.0 - Enclosure(0.25, 0.5)
        assert e.lo <= 0.5 and e.hi >= 0.75
        assert (2.0 / Enclosure(1.0, 2.0)).contains(1.5)

    def test_square_of_straddling_starts_at_zero(self):
        e = Enclosure(-2.0, 1.0).square()
        assert e.lo == 0.0 and e.hi >= 4.0

    def test_sqrt(self):
        e = Enclosure(4.0, 9.0).sqrt()
        assert e.lo <= 2.0 and e.hi >= 3.0
        with pytest.raises(NegativeSqrtError):
            Enclosure(-1.0, 1.0).sqrt()
        with pytest.raises(NegativeSqrtError):
            sqrt(-1.0)


class TestSetOperations:
    def test_intersect_and_hull(self):
        a, b = Enclosure(0.0, 2.0), Enclosure(1.0, 3.0)
        assert a.intersect(b) == Enclosure(1.0, 2.0)
        assert a.hull(b) == Enclosure(0.0, 3.0)
        assert Enclosure(1.2, 1.5).is_subset(a)

    def test_disjoint_intersection_raises(self):
        with pytest.raises(EmptyIntersectionError):
            Enclosure(0.0, 1.0).intersect(Enclosure(2.0, 3.0))

    def test_real_part_of_mixed_inputs(self):
        assert real_part(Enclosure(1.0, 3.0)) == 2.0
        assert real_part(2.0 + 1e-20j) == 2.0


def test_named_operations_match_operators():
    from ratio_bounds.core.enclosure import enclosure_add, enclosure_mul, enclosure_sqrt, enclosure_sub

    a, b = Enclosure(1.0, 2.0), Enclosure(3.0, 4.0)
    assert enclosure_add(a, b) == a + b
    assert enclosure_sub(a, b) == a - b
    assert enclosure_mul(a, b) == a * b
    s = enclosure_sqrt(Enclosure(4.0, 9.0))
    assert s.contains(2.0) and s.contains(3.0)
