"""
CSV and JSON writers for run records.

Floats are written with 17 significant digits so a file round-trips every
value exactly; records are sorted by (family, bound-id, params, x) and the
column order is fixed by the caller, so identical runs give identical bytes.
"""

import csv
import json
import math
import os
from typing import Any, Dict, Iterable, List, Optional, Sequence

from ..core.config import Config
from ..core.errors import ConfigError
from .logging_config import get_export_logger

logger = get_export_logger()


def format_float(value: float) -> str:
    return format(value, f".{Config.FLOAT_DIGITS}g")


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (list, tuple)):
        return ";".join(_csv_cell(v) for v in value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float):
        if not math.isfinite(value):
            return None if math.isnan(value) else ("inf" if value > 0 else "-inf")
        return float(format_float(value))
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    return value


def _sort_key(row: Dict[str, Any]):
    params = row.get("params") or ()
    x = row.get("x")
    return (
        str(row.get("family", "")),
        str(row.get("bound_id", row.get("id", ""))),
        tuple(params) if isinstance(params, (list, tuple)) else (params,),
        x if isinstance(x, (int, float)) and not math.isnan(x) else math.inf,
    )


def sort_records(rows: Iterable[Dict[str, Any]]) -> List[Dict[str, Any]]:
    return sorted(rows, key=_sort_key)


def write_csv(rows: Sequence[Dict[str, Any]], path: str, columns: Optional[Sequence[str]] = None) -> str:
    columns = list(columns) if columns is not None else (list(rows[0]) if rows else [])
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_cell(row.get(column)) for column in columns])
    return path


def write_json(rows: Sequence[Dict[str, Any]], path: str, summary: Optional[Dict[str, Any]] = None) -> str:
    payload = {"summary": _json_value(summary or {}), "records": _json_value(list(rows))}
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
    return path


def export_records(rows: Iterable[Dict[str, Any]], path: str, fmt: str,
                   columns: Optional[Sequence[str]] = None,
                   summary: Optional[Dict[str, Any]] = None, sort: bool = True) -> str:
    """Write ``rows`` to ``path`` as CSV or JSON and return the absolute path.

    Raises:
        ConfigError: On an unknown format
    """
    fmt = fmt.lower()
    if fmt not in Config.EXPORT_FORMATS:
        raise ConfigError(f"unknown export format {fmt!r}; choose from {', '.join(Config.EXPORT_FORMATS)}")
    rows = sort_records(rows) if sort else list(rows)
    path = os.path.abspath(path)
    if fmt == "csv":
        write_csv(rows, path, columns)
    else:
        write_json(rows, path, summary)
    logger.info(f"{Config.LOG_ICONS['package']} Wrote {len(rows)} record(s) to {path}")
    return path
