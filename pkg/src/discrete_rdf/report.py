"""Canonical JSON, CSV and text rendering of report objects."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any

import numpy as np

from .errors import UnsupportedFormat

__all__ = ["FORMATS", "to_plain", "emit_report"]

FORMATS = ("json", "csv", "text")


def _num(x: float):
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(format(x, ".12g"))


def to_plain(obj: Any) -> Any:
    """Recursively convert to JSON-ready values, floats at 12 significant digits."""
    if hasattr(obj, "to_dict"):
        return to_plain(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(float(obj))
    return obj


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif not isinstance(v, list):
            out[key] = v
    return out


def emit_report(record: Any, fmt: str = "json", config: dict | None = None) -> str:
    """Render ``record`` as ``json``, ``csv`` or ``text``.

    ``config`` (the resolved run configuration) is embedded under the key
    ``config`` in JSON and as a leading comment line in CSV and text.
    """
    if fmt not in FORMATS:
        raise UnsupportedFormat(f"format must be one of {', '.join(FORMATS)}, got {fmt!r}")
    plain = to_plain(record)
    if fmt == "json":
        if config is not None:
            plain = {"report": plain, "config": to_plain(config)}
        return json.dumps(plain, sort_keys=True, indent=2) + "\n"

    head = ""
    if config is not None:
        head = "# config " + json.dumps(to_plain(config), sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if hasattr(record, "csv_rows"):
            writer.writerows([to_plain(x) for x in row] for row in record.csv_rows())
        elif isinstance(plain, list):
            rows = [_flatten(r) if isinstance(r, dict) else {"value": r} for r in plain]
            keys = sorted({k for r in rows for k in r})
            writer.writerow(keys)
            writer.writerows([r.get(k, "") for k in keys] for r in rows)
        else:
            flat = _flatten(plain) if isinstance(plain, dict) else {"value": plain}
            keys = sorted(flat)
            writer.writerow(keys)
            writer.writerow([flat[k] for k in keys])
        return head + buf.getvalue()

    if hasattr(record, "to_text"):
        return head + record.to_text().rstrip("\n") + "\n"
    items = plain if isinstance(plain, list) else [plain]
    blocks = []
    for item in items:
        flat = _flatten(item) if isinstance(item, dict) else {"value": item}
        blocks.append("\n".join(f"{k}: {flat[k]}" for k in sorted(flat)))
    return head + "\n\n".join(blocks) + "\n"
