"""Deterministic JSON and CSV emission.

Floats are written with 17 significant digits so values round-trip exactly;
complex numbers become ``[re, im]`` pairs.
"""
from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, is_dataclass

import numpy as np

__all__ = ["to_jsonable", "dumps_json", "dumps_csv", "format_float"]


def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def to_jsonable(obj):
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(obj.real), to_jsonable(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _encode(obj, indent, level, out):
    pad = " " * (indent * (level + 1))
    if isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(k)}: ")
            _encode(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(" " * (indent * level) + "}")
    elif isinstance(obj, list):
        # short numeric rows stay on one line
        if all(not isinstance(v, (list, dict)) for v in obj) and len(obj) <= 8:
            parts = []
            for v in obj:
                _encode(v, indent, level + 1, parts)
            out.append("[" + ", ".join(parts) + "]")
            return
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad)
            _encode(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(" " * (indent * level) + "]")
    else:
        out.append(json.dumps(obj))


def dumps_json(payload, indent: int = 2) -> str:
    out = []
    _encode(to_jsonable(payload), indent, 0, out)
    return "".join(out) + "\n"


def dumps_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
                cells.append(str(int(v)))
            else:
                cells.append(format_float(v))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()
