"""
Deterministic JSON rendering of reports.

Floats are written with 17 significant digits (integral values keep a
trailing ".0"), keys keep insertion order, and non-finite numbers are
rejected, so identical inputs always give byte-identical text.
"""

import json
import math
from enum import Enum
from typing import Any

import numpy as np

INDENT = "  "


def format_float(value: float) -> str:
    """
    17-significant-digit representation of a finite float.

    Raises:
        ValueError: For NaN or infinity
    """
    if not math.isfinite(value):
        raise ValueError(f"Cannot serialize non-finite number {value!r}")
    text = format(value, '.17g')
    if not any(c in text for c in '.en'):
        text += ".0"
    return text


def _render(value: Any, depth: int) -> str:
    if isinstance(value, Enum):
        value = value.value
    if value is None or isinstance(value, (bool, np.bool_)):
        return json.dumps(None if value is None else bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)

    pad, inner = INDENT * depth, INDENT * (depth + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_render(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        if len(value) == 0:
            return "[]"
        items = [f"{inner}{_render(v, depth + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def dumps_report(report: Any) -> str:
    """Render a report dict (or anything JSON-like) as deterministic JSON text."""
    return _render(report, 0) + "\n"
