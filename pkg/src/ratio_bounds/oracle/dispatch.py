"""
One entry point for every ratio the oracles serve, plus a result cache.

Verification suites ask for the same (kind, params, x) point many times: every
bound of a family is compared against the same oracle value on the same grid.
:class:`OracleCache` memoises :class:`OracleResult` values per configuration so
each point is enclosed once per run. The cache is keyed on the full input and
guarded by a lock, so concurrent grid workers see the same values they would
compute themselves.
"""

import threading
from typing import Callable, Dict, Optional, Tuple

from ..core.config import Config, OracleConfig
from ..core.types import OracleResult, RatioKind, RatioSpec
from ..utils.logging_config import get_oracle_logger
from . import recurrences

Evaluator = Callable[..., OracleResult]

_EVALUATORS: Dict[RatioKind, Evaluator] = {
    RatioKind.PCF: recurrences.pcf_ratio_result,
    RatioKind.BESSEL_I: recurrences.bessel_i_ratio_result,
    RatioKind.BESSEL_K: recurrences.bessel_k_ratio_result,
    RatioKind.BESSEL_K_DOWN: recurrences.k_down_result,
    RatioKind.BESSEL_IK_PRODUCT: recurrences.product_result,
    RatioKind.KUMMER_AB1B1: recurrences.kummer_ratio_result,
    RatioKind.KUMMER_A1B: recurrences.kummer_a1b_result,
    RatioKind.KUMMER_A1B2: recurrences.kummer_a1b2_result,
    RatioKind.KUMMER_H: recurrences.kummer_H_result,
    RatioKind.GAUSS: recurrences.gauss_ratio_result,
    RatioKind.GAUSS_H: recurrences.gauss_H_result,
}


def evaluate_ratio(spec: RatioSpec, cfg: Optional[OracleConfig] = None) -> OracleResult:
    """Enclose the ratio ``spec`` describes; never raises on non-convergence."""
    cfg = cfg if cfg is not None else Config.oracle_config()
    return _EVALUATORS[spec.kind](*spec.params, spec.x, cfg)


CacheKey = Tuple[RatioKind, Tuple[float, ...], float, OracleConfig]


class OracleCache:
    """Thread-safe memo of oracle results for one run."""

    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self.logger = get_oracle_logger()
        self._lock = threading.Lock()
        self._store: Dict[CacheKey, OracleResult] = {}
        self.hits = 0
        self.misses = 0

    def evaluate(self, spec: RatioSpec, cfg: OracleConfig) -> OracleResult:
        if not self.enabled:
            return evaluate_ratio(spec, cfg)
        key = (spec.kind, spec.params, spec.x, cfg)
        with self._lock:
            cached = self._store.get(key)
            if cached is not None:
                self.hits += 1
                return cached
        # Evaluate outside the lock; two workers racing on one key compute the
        # same deterministic value.
        result = evaluate_ratio(spec, cfg)
        with self._lock:
            self.misses += 1
            self._store.setdefault(key, result)
        return result

    def __len__(self) -> int:
        with self._lock:
            return len(self._store)

    def clear(self) -> None:
        with self._lock:
            self._store.clear()
            self.hits = 0
            self.misses = 0

    def stats(self) -> Dict[str, int]:
        with self._lock:
            return {"entries": len(self._store), "hits": self.hits, "misses": self.misses}
