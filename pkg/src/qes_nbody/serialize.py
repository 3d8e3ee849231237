"""Deterministic rendering of results: JSON documents and CSV tables.

Exact scalars are written as {"rational": "p/q", "decimal": <20 digits>},
float scalars as {"decimal": <20 significant digits>}.  Documents are dumped
with sorted keys and no environment-dependent content, so identical configs
produce byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import fields, is_dataclass
from fractions import Fraction

from .scalars import Scalar, ScalarMode

SCHEMA_VERSION = 1

__all__ = ["SCHEMA_VERSION", "render", "document", "dumps", "csv_table", "mode_name"]


def mode_name(mode: ScalarMode) -> str:
    return "exact" if mode.is_exact else f"float{mode.bits}"


def render(value, digits: int = 20):
    """Recursively convert values into JSON-encodable structures."""
    if isinstance(value, Scalar):
        if value.mode.is_exact:
            return {
                "rational": str(value.value),
                "decimal": value.decimal_str(digits),
            }
        return {"decimal": value.decimal_str(digits)}
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, ScalarMode):
        return mode_name(value)
    if isinstance(value, dict):
        return {str(k): render(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render(v, digits) for v in value]
    if is_dataclass(value) and not isinstance(value, type):
        return {
            f.name: render(getattr(value, f.name), digits) for f in fields(value)
        }
    if isinstance(value, float):
        return repr(value)
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


def document(task: str, config: dict, mode: ScalarMode | str, results) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "task": task,
        "mode": mode if isinstance(mode, str) else mode_name(mode),
        "config": render(config),
        "results": render(results),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def csv_table(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()
