"""
CSV and JSON-lines writers.

Floats carry 9 significant digits; divergent or missing values are
written as empty CSV fields and JSON nulls, never as inf/nan text.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping

import pandas as pd

FLOAT_FORMAT = "%.9g"


def _round(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(f"{value:.9g}")
    if isinstance(value, Mapping):
        return {k: _round(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round(v) for v in value]
    if hasattr(value, "item"):
        return _round(value.item())
    return value


def write_csv(frame: pd.DataFrame, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="")
    return path


def to_json_line(record: Mapping[str, Any]) -> str:
    """One record, keys in insertion order."""
    return json.dumps(_round(dict(record)), allow_nan=False)


def write_jsonl(records: Iterable[Mapping[str, Any]], path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as f:
        for record in records:
            f.write(to_json_line(record) + "\n")
    return path


def write_json(record: Dict[str, Any], path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_round(record), indent=2, allow_nan=False) + "\n")
    return path


WINDOW_SWEEP_COLUMNS = ["t1", "t2", "measure", "value", "diverged"]


def window_sweep_frame(rows: Iterable[Mapping[str, Any]]) -> pd.DataFrame:
    return pd.DataFrame(list(rows), columns=WINDOW_SWEEP_COLUMNS)
