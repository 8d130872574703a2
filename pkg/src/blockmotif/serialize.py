"""Stable text encodings for reports: JSON and CSV suitable for golden files.

Key order is insertion order, floats are rendered with 17 significant
digits (so values round-trip bit-exactly), and non-finite floats become the
strings "inf", "-inf", "nan" (plain JSON has no encoding for them).  The
same input therefore always produces byte-identical output.
"""

from __future__ import annotations

import math

__all__ = ["dumps_stable", "format_float", "pmf_to_csv"]


def format_float(x: float) -> str:
    """17-significant-digit decimal form of a float (round-trip exact)."""
    return format(float(x), ".17g")


def _encode(obj, pieces: list) -> None:
    if obj is None:
        pieces.append("null")
    elif isinstance(obj, bool):
        pieces.append("true" if obj else "false")
    elif isinstance(obj, int):
        pieces.append(str(obj))
    elif isinstance(obj, float):
        if math.isnan(obj):
            pieces.append('"nan"')
        elif math.isinf(obj):
            pieces.append('"inf"' if obj > 0 else '"-inf"')
        else:
            pieces.append(format_float(obj))
    elif isinstance(obj, str):
        pieces.append(
            '"'
            + obj.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
            + '"'
        )
    elif isinstance(obj, dict):
        pieces.append("{")
        for k, key in enumerate(obj):
            if k:
                pieces.append(", ")
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            _encode(key, pieces)
            pieces.append(": ")
            _encode(obj[key], pieces)
        pieces.append("}")
    elif isinstance(obj, (list, tuple)):
        pieces.append("[")
        for k, item in enumerate(obj):
            if k:
                pieces.append(", ")
            _encode(item, pieces)
        pieces.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}: {obj!r}")


def dumps_stable(obj) -> str:
    """Deterministic JSON text: insertion-order keys, 17-digit floats."""
    pieces: list = []
    _encode(obj, pieces)
    return "".join(pieces)


def pmf_to_csv(pmf) -> str:
    """CSV text with columns ``k,prob`` for a pmf given as P(0..kmax)."""
    lines = ["k,prob"]
    for k, p in enumerate(pmf):
        lines.append(f"{k},{format_float(p)}")
    return "\n".join(lines) + "\n"
