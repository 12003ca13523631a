"""
Configuration and constants for ratio-bounds.
"""

import os
from dataclasses import dataclass
from typing import Optional

from .errors import ConfigError


@dataclass(frozen=True)
class OracleConfig:
    """Recurrence depth and stopping rule for the enclosure oracles."""

    depth: int = 60
    target_rel_width: float = 1e-12
    max_depth: int = 400

    def __post_init__(self):
        if self.depth < 1:
            raise ConfigError(f"oracle depth must be >= 1, got {self.depth}")
        if not self.target_rel_width > 0.0:
            raise ConfigError(f"target width must be positive, got {self.target_rel_width}")
        if self.max_depth < self.depth:
            raise ConfigError(f"max depth {self.max_depth} is below depth {self.depth}")

    def depths(self):
        """Depth schedule: the configured depth, doubled until max_depth."""
        depth = self.depth
        while depth < self.max_depth:
            yield depth
            depth *= 2
        yield self.max_depth


class Config:
    """Configuration class containing all constants and settings for ratio-bounds."""

    # Oracle defaults
    DEFAULT_DEPTH = 60
    DEFAULT_MAX_DEPTH = 400
    DEFAULT_TARGET_WIDTH = 1e-12
    TRICOMI_MAX_STEPS = 40000
    SERIES_MAX_TERMS = 20000
    SERIES_TOLERANCE = 1e-17

    # PCF ratios on this x range fall back to the Kummer-series form of U.
    PCF_SERIES_RANGE = (-45.0, 2.0)
    # The Gauss backward step contracts only for x < 1/2.
    GAUSS_RECURRENCE_MAX_X = 0.4

    # Verification
    MARGIN_REL = 1e-11
    RESIDUAL_ULPS = 64
    RICCATI_POINTS = 2000
    RICCATI_REFINE = 4
    LAMBDA_GRID_SIZE = 11

    # Accuracy fits
    FIT_POINTS = 24
    FIT_MIN_POINTS = 8
    FIT_NOISE_FACTOR = 100.0
    FIT_EXPONENT_TOLERANCE = 0.3

    # Double-ratio exploration
    CONJECTURE_N = (0.6, 1.0, 2.0)
    CONJECTURE_KMAX = 5
    CONJECTURE_X_RANGE = (-20.0, 20.0, 81)

    # Export
    FLOAT_DIGITS = 17
    EXPORT_FORMATS = ("csv", "json")

    # Environment overrides
    DEPTH_ENV = "RATIO_BOUNDS_DEPTH"
    MAX_DEPTH_ENV = "RATIO_BOUNDS_MAX_DEPTH"
    TARGET_WIDTH_ENV = "RATIO_BOUNDS_TARGET_WIDTH"
    WORKERS_ENV = "RATIO_BOUNDS_WORKERS"
    DEFAULT_WORKERS = 1

    FAMILIES = ("pcf", "bessel", "confluent", "gauss")

    # Logging settings
    LOG_ICONS = {
        'search': '🔍',
        'table': '📋',
        'success': '✅',
        'warning': '⚠️',
        'error': '❌',
        'processing': '🔧',
        'target': '🎯',
        'note': '📝',
        'ruler': '📏',
        'package': '📦',
    }

    @classmethod
    def _env_value(cls, name: str, cast):
        raw = os.environ.get(name)
        if raw is None or raw.strip() == "":
            return None
        try:
            return cast(raw)
        except ValueError as exc:
            raise ConfigError(f"{name}={raw!r} is not a valid {cast.__name__}") from exc

    @classmethod
    def _resolve(cls, override, env_name: str, default, cast):
        """Precedence: explicit override (CLI flag) > environment variable > default."""
        if override is not None:
            return override
        from_env = cls._env_value(env_name, cast)
        return default if from_env is None else from_env

    @classmethod
    def get_depth(cls, override: Optional[int] = None) -> int:
        return cls._resolve(override, cls.DEPTH_ENV, cls.DEFAULT_DEPTH, int)

    @classmethod
    def get_max_depth(cls, override: Optional[int] = None) -> int:
        return cls._resolve(override, cls.MAX_DEPTH_ENV, cls.DEFAULT_MAX_DEPTH, int)

    @classmethod
    def get_target_width(cls, override: Optional[float] = None) -> float:
        return cls._resolve(override, cls.TARGET_WIDTH_ENV, cls.DEFAULT_TARGET_WIDTH, float)

    @classmethod
    def get_workers(cls, override: Optional[int] = None) -> int:
        workers = cls._resolve(override, cls.WORKERS_ENV, cls.DEFAULT_WORKERS, int)
        if workers < 1:
            raise ConfigError(f"workers must be >= 1, got {workers}")
        return workers

    @classmethod
    def oracle_config(
        cls,
        depth: Optional[int] = None,
        target_width: Optional[float] = None,
        max_depth: Optional[int] = None,
    ) -> OracleConfig:
        """Build an :class:`OracleConfig` from flags, environment and defaults."""
        resolved_depth = cls.get_depth(depth)
        resolved_max = max(cls.get_max_depth(max_depth), resolved_depth)
        return OracleConfig(
            depth=resolved_depth,
            target_rel_width=cls.get_target_width(target_width),
            max_depth=resolved_max,
        )
