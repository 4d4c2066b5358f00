"""Deterministic CSV/JSON output written atomically."""
from __future__ import annotations

import io
import json
import os
import tempfile
from pathlib import Path

import numpy as np

FLOAT_FMT = "%.17g"


def atomic_write_text(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_csv(path, header, columns, int_columns=()) -> Path:
    """Write equal-length columns with a header row; floats at 17 significant digits."""
    cols = [np.asarray(c, dtype=float) for c in columns]
    table = np.column_stack(cols) if cols and len(cols[0]) else np.empty((0, len(header)))
    fmt = ["%d" if i in int_columns else FLOAT_FMT for i in range(len(header))]
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    if len(table):
        np.savetxt(buf, table, fmt=fmt, delimiter=",", newline="\n")
    return atomic_write_text(path, buf.getvalue())


def write_json(path, record) -> Path:
    return atomic_write_text(path, json.dumps(record, indent=2, sort_keys=True, default=_jsonable) + "\n")


def _jsonable(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def read_csv(path) -> dict[str, np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return {name: data[:, i] for i, name in enumerate(header)}
