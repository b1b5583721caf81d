"""CSV and JSON-lines result files.

Column order is the record's field order, so CSV files always start with
``time_ms`` (timelines) or ``distance_m`` (sweeps, availability). Floats are
written with 6 significant digits and booleans as ``true``/``false`` in both
formats. Output goes to a temporary file that is renamed into place, so a
failed write never leaves a partial file behind.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import os
import sys
import tempfile
from pathlib import Path

__all__ = ["FORMATS", "format_results", "emit_results", "read_results"]

FORMATS = ("csv", "json-lines")


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".6g")


def format_results(records, fmt: str = "csv") -> str:
    if not records:
        raise ValueError("no records to emit")
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    names = [f.name for f in dataclasses.fields(records[0])]
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(names)
        for r in records:
            w.writerow([_fmt(getattr(r, n)) for n in names])
    else:
        for r in records:
            # tokens are already valid JSON literals
            body = ", ".join(f"{json.dumps(n)}: {_fmt(getattr(r, n))}" for n in names)
            buf.write("{" + body + "}\n")
    return buf.getvalue()


def emit_results(records, fmt: str = "csv", destination=None) -> None:
    """Write ``records`` to ``destination`` (path, or stdout when ``None`` or ``"-"``)."""
    text = format_results(records, fmt)
    if destination is None or str(destination) == "-":
        sys.stdout.write(text)
        return
    dest = Path(destination)
    fd, tmp = tempfile.mkstemp(prefix=f".{dest.name}.", dir=dest.parent if str(dest.parent) else ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, dest)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse(value: str, kind: str):
    if kind == "bool":
        if value not in ("true", "false"):
            raise ValueError(f"expected true/false, got {value!r}")
        return value == "true"
    if kind == "int":
        return int(value)
    return float(value)


def read_results(path, record_type, fmt: str = "csv") -> list:
    """Parse a results file back into ``record_type`` instances."""
    flds = dataclasses.fields(record_type)
    kinds = {f.name: str(f.type) for f in flds}
    text = Path(path).read_text(encoding="utf-8")
    out = []
    if fmt == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        header, body = rows[0], rows[1:]
        if header != [f.name for f in flds]:
            raise ValueError(f"unexpected header {header}")
        for row in body:
            out.append(record_type(**{n: _parse(v, kinds[n]) for n, v in zip(header, row)}))
    elif fmt == "json-lines":
        for line in text.splitlines():
            obj = json.loads(line)
            out.append(record_type(**{n: obj[n] for n in kinds}))
    else:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    return out
