"""
Validation utilities for grid files and output paths.
"""

import json
import math
import os
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.config import Config
from ..core.grid import Scheme, linear_points, log_points


class Validators:
    """Utility class for validating user-supplied files and paths."""

    @staticmethod
    def _numbers(values: Any, what: str) -> Tuple[Optional[List[float]], Optional[str]]:
        if not isinstance(values, list) or not values:
            return None, f"'{what}' must be a non-empty list"
        out = []
        for value in values:
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                return None, f"'{what}' holds a non-numeric or non-finite entry: {value!r}"
            out.append(float(value))
        return out, None

    @staticmethod
    def _params(values: Any) -> Tuple[Optional[List[Tuple[float, ...]]], Optional[str]]:
        if not isinstance(values, list) or not values:
            return None, "'params' must be a non-empty list"
        out = []
        for item in values:
            row = item if isinstance(item, list) else [item]
            numbers, error = Validators._numbers(row, "params")
            if error:
                return None, error
            out.append(tuple(numbers))
        if len({len(p) for p in out}) != 1:
            return None, "'params' rows must all have the same length"
        return out, None

    @staticmethod
    def _x_range(spec: Any) -> Tuple[Optional[List[float]], Optional[str], str]:
        if not isinstance(spec, dict):
            return None, "'x_range' must be an object with lo, hi, count", Scheme.LINEAR.value
        missing = [key for key in ("lo", "hi", "count") if key not in spec]
        if missing:
            return None, f"'x_range' is missing {', '.join(missing)}", Scheme.LINEAR.value
        scheme = str(spec.get("scheme", Scheme.LINEAR.value)).lower()
        if scheme not in (Scheme.LINEAR.value, Scheme.LOG.value):
            return None, f"unknown x_range scheme {scheme!r} (use linear or log)", scheme
        try:
            lo, hi, count = float(spec["lo"]), float(spec["hi"]), int(spec["count"])
        except (TypeError, ValueError):
            return None, "'x_range' lo/hi must be numbers and count an integer", scheme
        if count < 1:
            return None, f"'x_range' count must be >= 1, got {count}", scheme
        if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
            return None, f"'x_range' needs finite lo <= hi, got [{lo}, {hi}]", scheme
        if scheme == Scheme.LOG.value:
            if lo <= 0.0:
                return None, f"a log x_range needs lo > 0, got {lo}", scheme
            points = log_points(lo, hi, count)
        else:
            points = linear_points(lo, hi, count)
        return [float(v) for v in np.asarray(points)], None, scheme

    @staticmethod
    def validate_grid_file(grid_path: str, base_directory: Optional[str] = None) -> Dict[str, Any]:
        """
        Validate and load a JSON grid file.

        Args:
            grid_path: Relative or absolute path to the grid file
            base_directory: Base directory for resolving relative paths

        Returns:
            Dict with validation results; ``params`` and ``x`` are None when the
            file leaves them to the defaults
        """
        result = {
            'valid': False,
            'resolved_path': None,
            'params': None,
            'x': None,
            'scheme': None,
            'error_message': None,
        }

        resolved_path = grid_path
        if base_directory is not None and not os.path.isabs(grid_path):
            resolved_path = os.path.join(base_directory, grid_path)
        resolved_path = os.path.abspath(resolved_path)

        if not os.path.exists(resolved_path):
            result['error_message'] = f"File not found: {resolved_path}"
            return result
        if not os.path.isfile(resolved_path):
            result['error_message'] = f"Path is not a file: {resolved_path}"
            return result

        try:
            with open(resolved_path, encoding="utf-8") as handle:
                data = json.load(handle)
        except (OSError, json.JSONDecodeError) as e:
            result['error_message'] = f"Invalid grid file: {e}"
            return result

        if not isinstance(data, dict):
            result['error_message'] = "Grid file must hold a JSON object"
            return result
        unknown = sorted(set(data) - {"params", "x", "x_range"})
        if unknown:
            result['error_message'] = f"Unknown grid keys: {', '.join(unknown)}"
            return result
        if "x" in data and "x_range" in data:
            result['error_message'] = "Give either 'x' or 'x_range', not both"
            return result

        if "params" in data:
            params, error = Validators._params(data["params"])
            if error:
                result['error_message'] = error
                return result
            result['params'] = params
        if "x" in data:
            xs, error = Validators._numbers(data["x"], "x")
            if error:
                result['error_message'] = error
                return result
            result['x'] = sorted(set(xs))
            result['scheme'] = Scheme.MIXED.value
        elif "x_range" in data:
            xs, error, scheme = Validators._x_range(data["x_range"])
            if error:
                result['error_message'] = error
                return result
            result['x'] = xs
            result['scheme'] = scheme

        result['valid'] = True
        result['resolved_path'] = resolved_path
        return result

    @staticmethod
    def validate_output_path(output_path: str, fmt: str) -> Dict[str, Any]:
        """
        Validate an output path and format.

        Returns:
            Dict with validation results and the resolved path
        """
        result = {
            'valid': False,
            'resolved_path': None,
            'error_message': None,
        }
        fmt = fmt.lower()
        if fmt not in Config.EXPORT_FORMATS:
            result['error_message'] = f"Unknown format {fmt!r}; choose from {', '.join(Config.EXPORT_FORMATS)}"
            return result

        resolved_path = os.path.abspath(output_path)
        if os.path.isdir(resolved_path):
            result['error_message'] = f"Output path is a directory: {resolved_path}"
            return result
        output_dir = os.path.dirname(resolved_path)
        if output_dir and not os.path.isdir(output_dir):
            try:
                os.makedirs(output_dir, exist_ok=True)
            except OSError as e:
                result['error_message'] = f"Cannot create output directory: {e}"
                return result

        result['valid'] = True
        result['resolved_path'] = resolved_path
        return result
