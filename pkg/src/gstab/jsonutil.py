"""Byte-stable JSON and CSV emission for reports.

Floats are written with 17 significant digits so equal inputs always produce
identical bytes; non-finite values are written as quoted strings since JSON
has no literal for them.
"""

from __future__ import annotations

import json
import math


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def dumps(value, indent: int = 2) -> str:
    out: list[str] = []
    _emit(value, out, indent, 0)
    out.append("\n")
    return "".join(out)


def _emit(value, out, indent, level):
    if type(value).__module__ == "numpy" and hasattr(value, "item"):
        value = value.item()
    pad = " " * (indent * level)
    inner = " " * (indent * (level + 1))
    if value is None or isinstance(value, bool):
        out.append("null" if value is None else ("true" if value else "false"))
    elif isinstance(value, float):
        out.append(_fmt_float(value))
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(value.items()):
            out.append(inner + json.dumps(str(k)) + ": ")
            _emit(v, out, indent, level + 1)
            out.append(",\n" if i + 1 < len(value) else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(value):
            out.append(inner)
            _emit(v, out, indent, level + 1)
            out.append(",\n" if i + 1 < len(value) else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def csv_lines(header, rows) -> str:
    def cell(v):
        if isinstance(v, float):
            if math.isinf(v) or math.isnan(v):
                return "inf" if v > 0 else ("nan" if math.isnan(v) else "-inf")
            return format(v, ".17g")
        return str(v)

    lines = [",".join(header)]
    lines.extend(",".join(cell(c) for c in row) for row in rows)
    return "\n".join(lines) + "\n"
