"""CSV and flat-JSON serialization with lossless float formatting."""
from __future__ import annotations

import csv
import io
import json
import math
import os
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np


def fmt(v) -> str:
    """17 significant digits for floats, plain text for everything else."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v) + 0.0, ".17g")  # + 0.0 turns -0.0 into 0.0
    return str(v)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row has {len(row)} fields, header has {len(header)}")
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _json_value(v) -> str:
    if isinstance(v, (float, np.floating)):
        x = float(v)
        if not math.isfinite(x):
            return "null"
        return fmt(x)
    if isinstance(v, (bool, np.bool_, int, np.integer)):
        return fmt(v)
    if v is None:
        return "null"
    if isinstance(v, str):
        return json.dumps(v)
    raise TypeError(f"flat JSON holds scalars only, got {type(v).__name__}")


def json_text(record: Mapping) -> str:
    """One-level JSON object; floats with 17 significant digits."""
    items = [f"  {json.dumps(str(k))}: {_json_value(v)}" for k, v in record.items()]
    return "{\n" + ",\n".join(items) + "\n}\n"


def write_text(path: Optional[str], text: str) -> None:
    """Write ``text`` to ``path`` (stdout for ``None`` or ``-``), via a temporary file."""
    if path is None or path == "-":
        print(text, end="")
        return
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def read_csv(path: str, columns: Sequence[str]) -> np.ndarray:
    """Numeric columns of a headed CSV file, in the requested order."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        missing = [c for c in columns if c not in header]
        if missing:
            raise ValueError(f"{path}: missing columns {missing}; header is {header}")
        idx = [header.index(c) for c in columns]
        rows = [[float(r[i]) for i in idx] for r in reader if r]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return np.array(rows, dtype=float)
