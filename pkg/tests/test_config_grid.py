import pytest

from ratio_bounds.core.config import Config, OracleConfig
from ratio_bounds.core.errors import ConfigError, DomainError
from ratio_bounds.core.grid import DEFAULT_GRIDS, Grid, Scheme, lambda_grid, log_points, merge_points
from ratio_bounds.core.types import RatioKind, RatioSpec, Side, check_domain


class TestConfigPrecedence:
    def test_defaults(self):
        cfg = Config.oracle_config()
        assert cfg.depth == Config.DEFAULT_DEPTH
        assert cfg.max_depth == Config.DEFAULT_MAX_DEPTH
        assert cfg.target_rel_width == Config.DEFAULT_TARGET_WIDTH
        assert Config.get_workers() == 1

    def test_environment_beats_default(self, monkeypatch):
        monkeypatch.setenv(Config.DEPTH_ENV, "90")
        monkeypatch.setenv(Config.TARGET_WIDTH_ENV, "1e-9")
        cfg = Config.oracle_config()
        assert cfg.depth == 90
        assert cfg.target_rel_width == 1e-9

    def test_flag_beats_environment(self, monkeypatch):
        monkeypatch.setenv(Config.DEPTH_ENV, "90")
        monkeypatch.setenv(Config.WORKERS_ENV, "3")
        assert Config.oracle_config(depth=30).depth == 30
        assert Config.get_workers(2) == 2
        assert Config.get_workers() == 3

    def test_blank_environment_is_ignored(self, monkeypatch):
        monkeypatch.setenv(Config.DEPTH_ENV, "  ")
        assert Config.get_depth() == Config.DEFAULT_DEPTH

    def test_malformed_environment_raises(self, monkeypatch):
        monkeypatch.setenv(Config.DEPTH_ENV, "deep")
        with pytest.raises(ConfigError):
            Config.get_depth()

    def test_max_depth_follows_a_large_depth(self):
        cfg = Config.oracle_config(depth=1000)
        assert cfg.max_depth == 1000

    @pytest.mark.parametrize("kwargs", [
        {"depth": 0},
        {"target_rel_width": 0.0},
        {"depth": 100, "max_depth": 50},
    ])
    def test_invalid_oracle_config(self, kwargs):
        with pytest.raises(ConfigError):
            OracleConfig(**kwargs)

    def test_invalid_workers(self):
        with pytest.raises(ConfigError):
            Config.get_workers(0)

    def test_depth_schedule_doubles_up_to_max(self):
        assert list(OracleConfig(depth=50, max_depth=400).depths()) == [50, 100, 200, 400]


class TestGrid:
    def test_product_and_restrict(self):
        grid = Grid(((1.0,), (2.0,)), (0.5, 1.5, 2.5))
        assert grid.size == 6
        kept = grid.restrict(lambda p, x: x > p[0])
        assert kept == [((1.0,), 1.5), ((1.0,), 2.5), ((2.0,), 2.5)]

    def test_merge_points_sorts_and_dedups(self):
        assert merge_points([3.0, 1.0], [1.0, 2.0]) == (1.0, 2.0, 3.0)

    def test_log_points_reject_nonpositive(self):
        with pytest.raises(ConfigError):
            log_points(0.0, 1.0, 5)

    def test_with_x_and_summary(self):
        grid = Grid(((1.0,),), (1.0,)).with_x([0.1, 0.2], Scheme.LOG)
        summary = grid.summary()
        assert summary["x_count"] == 2
        assert summary["scheme"] == "log"
        assert summary["x_min"] == 0.1

    def test_default_grids_exist(self):
        assert set(DEFAULT_GRIDS) == {"pcf", "bessel", "bessel_product", "confluent", "gauss"}
        for factory in DEFAULT_GRIDS.values():
            assert factory().size > 0

    def test_lambda_grid_includes_ends(self):
        values = lambda_grid(0.0, 1.0, 11)
        assert values[0] == 0.0 and values[-1] == 1.0 and len(values) == 11


class TestDomain:
    @pytest.mark.parametrize("kind, params, x", [
        (RatioKind.PCF, (0.5,), 1.0),
        (RatioKind.BESSEL_I, (1.0,), 0.0),
        (RatioKind.BESSEL_K, (0.25,), 1.0),
        (RatioKind.BESSEL_K_DOWN, (0.75,), 1.0),
        (RatioKind.KUMMER_AB1B1, (0.0, 1.0), 1.0),
        (RatioKind.GAUSS, (1.0, 1.0, 1.0), 1.0),
        (RatioKind.GAUSS, (1.0, 1.0), 0.5),
    ])
    def test_outside_domain_raises(self, kind, params, x):
        with pytest.raises(DomainError) as info:
            RatioSpec(kind, params, x)
        assert info.value.code == "DOMAIN"

    def test_pcf_accepts_negative_x(self):
        check_domain(RatioKind.PCF, (1.0,), -30.0)

    def test_product_accepts_half_integer_gap(self):
        check_domain(RatioKind.BESSEL_IK_PRODUCT, (0.5,), 1.0)
        check_domain(RatioKind.BESSEL_IK_PRODUCT, (0.0,), 1.0)

    def test_side_flip(self):
        assert Side.LOWER.flipped() is Side.UPPER
        assert Side.UPPER.flipped() is Side.LOWER
