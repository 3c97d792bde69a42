"""Rendering of verdicts and verification results as text, JSON or CSV.

JSON output is wrapped in an envelope ``{"schema": "temperkit/1", ...}`` and
serialized with sorted keys, so equal inputs give byte-identical reports.
Exact rationals are written as ``"p/q"`` strings.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence

SCHEMA = "temperkit/1"
FORMATS = ("text", "json", "csv")

LEVI_COLUMNS = (
    "g_label",
    "levi_subset",
    "levi_type",
    "tempered",
    "extremal_ratio",
    "witness",
    "table_match",
)


def frac_str(x) -> str:
    """``Fraction(5, 9)`` -> ``"5/9"``; integers keep the ``/1``; infinity is ``"inf"``."""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def type_str(kinds: Sequence[str]) -> str:
    return "+".join(kinds) if kinds else "-"


def levi_record(label: str, levi, kinds, verdict, match: Optional[bool]) -> Dict[str, Any]:
    return {
        "g_label": label,
        "levi_subset": list(levi),
        "levi_type": type_str(kinds),
        "tempered": verdict.tempered,
        "extremal_ratio": frac_str(verdict.extremal_ratio),
        "witness": list(verdict.witness) if verdict.witness is not None else None,
        "table_match": match,
    }


def envelope(command: str, **payload) -> Dict[str, Any]:
    out = {"schema": SCHEMA, "command": command}
    out.update(payload)
    return out


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_jsonable) + "\n"


def _jsonable(x):
    if isinstance(x, Fraction):
        return frac_str(x)
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _cell(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, (list, tuple)):
        return "{" + ",".join(str(v) for v in x) + "}"
    if isinstance(x, Fraction):
        return frac_str(x)
    return str(x)


def to_csv(records: Iterable[Dict[str, Any]], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow([_csv_cell(rec.get(c)) for c in columns])
    return buf.getvalue()


def _csv_cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (list, tuple)):
        return " ".join(str(v) for v in x)
    return str(x)


def text_table(records: Sequence[Dict[str, Any]], columns: Sequence[str]) -> str:
    """Left-aligned columns separated by two spaces."""
    rows = [list(columns)] + [[_cell(rec.get(c)) for c in columns] for rec in records]
    widths = [max(len(r[k]) for r in rows) for k in range(len(columns))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render_records(records: List[Dict[str, Any]], columns: Sequence[str], fmt: str,
                   command: str, **extra) -> str:
    """One renderer for every tabular command."""
    if fmt == "json":
        return to_json(envelope(command, rows=records, **extra))
    if fmt == "csv":
        return to_csv(records, columns)
    return text_table(records, columns)
