import json
import math
from typing import Any, Iterable

import pandas as pd

SIGNIFICANT_DIGITS = 9


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, f".{SIGNIFICANT_DIGITS}g")
    if hasattr(value, "dtype"):
        return format_value(value.item())
    return str(value)


def csv_bytes(header: list[str], rows: Iterable[Iterable[Any]]) -> bytes:
    frame = pd.DataFrame([list(row) for row in rows], columns=header)
    text = frame.to_csv(index=False, float_format=f"%.{SIGNIFICANT_DIGITS}g", na_rep="nan", lineterminator="\n")
    return text.encode("utf8")


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if hasattr(value, "dtype"):
        return _plain(value.item() if getattr(value, "ndim", 0) == 0 else value.tolist())
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def json_bytes(payload: dict) -> bytes:
    return (json.dumps(_plain(payload), indent=2, sort_keys=True) + "\n").encode("utf8")
