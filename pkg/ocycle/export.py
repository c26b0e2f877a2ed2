"""Rendering of exact results and tabular output through pandas.

Every value is rendered to a string before it reaches the DataFrame, so the
CSV, JSON and text outputs are byte-stable for fixed inputs.
"""

from __future__ import annotations

import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

import pandas as pd

from . import log
from .errors import InputError
from .partitions import Partition
from .qpoly import PolyOverFq
from .series import TruncatedSeries, format_rational

FORMATS = ("json", "csv", "text")
Row = Dict[str, str]


def render(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    if isinstance(value, (Partition, PolyOverFq, TruncatedSeries)):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(render(v) for v in value) + "]"
    return str(value)


def render_row(row: Mapping[str, Any]) -> Row:
    return {key: render(value) for key, value in row.items()}


def to_frame(rows: Sequence[Mapping[str, Any]]) -> pd.DataFrame:
    rendered = [render_row(r) for r in rows]
    columns: List[str] = []
    for r in rendered:
        for key in r:
            if key not in columns:
                columns.append(key)
    return pd.DataFrame(rendered, columns=columns, dtype=str).fillna("")


def format_rows(
    rows: Sequence[Mapping[str, Any]],
    fmt: str,
    command: str,
    params: Optional[Mapping[str, Any]] = None,
) -> str:
    if fmt not in FORMATS:
        raise InputError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    frame = to_frame(rows)
    if fmt == "csv":
        buf = io.StringIO()
        frame.to_csv(buf, index=False, lineterminator="\n")
        return buf.getvalue()
    if fmt == "text":
        if frame.empty:
            return "(no rows)\n"
        return frame.to_string(index=False) + "\n"
    payload = {
        "command": command,
        "params": {k: render(v) for k, v in (params or {}).items()},
        "rows": frame.to_dict(orient="records"),
    }
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def write_rows(
    rows: Sequence[Mapping[str, Any]],
    fmt: str,
    out: Optional[Union[str, Path]],
    command: str,
    params: Optional[Mapping[str, Any]] = None,
) -> str:
    """Render rows and write them to `out` (or stdout); returns the text."""
    text = format_rows(rows, fmt, command, params)
    if out is None:
        sys.stdout.write(text)
        return text
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    log.ok(f"Wrote {len(rows)} rows to {path}")
    return text
