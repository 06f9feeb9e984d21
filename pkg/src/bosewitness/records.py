"""Flat output tables and their CSV / JSON / plain-text encodings.

Numbers are written with 12 significant digits in every format, so the CSV
and JSON encodings of one run parse back to identical values.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import __version__

SIG_DIGITS = 12


@dataclass
class Table:
    """Rows of named, unit-tagged columns. Unit is None for text columns."""

    columns: list[tuple[str, str | None]]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, record: dict) -> None:
        self.rows.append([record.get(name) for name, _ in self.columns])

    def header(self) -> list[str]:
        return [name if unit is None else f"{name}({unit})" for name, unit in self.columns]

    def records(self) -> list[dict]:
        return [dict(zip(self.header(), row)) for row in self.rows]


def _clean(value):
    """Round floats to SIG_DIGITS, map enums to their value, non-finite to None."""
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(f"{value:.{SIG_DIGITS}g}")
    return value


def _text(value) -> str:
    value = _clean(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{SIG_DIGITS}g}"
    return str(value)


def default_meta(**extra) -> dict:
    meta = {
        "generator": f"bosewitness {__version__}",
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    meta.update(extra)
    return meta


def to_json(table: Table, include_meta: bool = True) -> str:
    doc = {}
    if include_meta:
        doc["meta"] = table.meta
    doc["columns"] = [{"name": n, "unit": u} for n, u in table.columns]
    doc["rows"] = [{k: _clean(v) for k, v in rec.items()} for rec in table.records()]
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def to_csv(table: Table, include_meta: bool = True) -> str:
    buf = io.StringIO()
    if include_meta:
        for key, value in table.meta.items():
            buf.write(f"# {key}: {value}\r\n")
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(table.header())
    for row in table.rows:
        writer.writerow([_text(v) for v in row])
    return buf.getvalue()


def to_text(table: Table, include_meta: bool = True) -> str:
    header = table.header()
    lines = []
    if include_meta:
        lines.extend(f"# {k}: {v}" for k, v in table.meta.items())
    if len(table.rows) == 1:
        width = max(len(h) for h in header)
        lines.extend(f"{h:<{width}}  {_text(v)}" for h, v in zip(header, table.rows[0]))
    else:
        cells = [header] + [[_text(v) for v in row] for row in table.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
        lines.extend("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)
    return "\n".join(lines) + "\n"


FORMATS = {"table": to_text, "csv": to_csv, "json": to_json}


def render(table: Table, fmt: str = "table", include_meta: bool = True) -> str:
    return FORMATS[fmt](table, include_meta)


def _parse_cell(text: str):
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        number = float(text)
    except ValueError:
        return text
    if number.is_integer() and "." not in text and "e" not in text.lower():
        return int(text)
    return number


def read_csv(text: str) -> list[dict]:
    """Parse CSV written by :func:`to_csv`, skipping ``#`` metadata lines."""
    body = "".join(line for line in text.splitlines(keepends=True) if not line.startswith("#"))
    reader = csv.reader(io.StringIO(body))
    header = next(reader)
    return [dict(zip(header, (_parse_cell(c) for c in row))) for row in reader]


def read_json(text: str) -> list[dict]:
    return json.loads(text)["rows"]
