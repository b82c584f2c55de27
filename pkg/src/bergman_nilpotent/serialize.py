"""Deterministic JSON/CSV output and atomic file writes."""

from __future__ import annotations

import json
import math
import os
import tempfile
from pathlib import Path

from .operator import TruncatedMatrix


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    text = format(x, ".17g")
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def dumps(obj, indent: int = 2) -> str:
    """JSON with sorted keys and floats printed to 17 significant digits."""
    return _encode(obj, indent, 0) + "\n"


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(int(obj))
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if hasattr(obj, "item") and not isinstance(obj, (list, tuple, dict)):
        # numpy scalars
        return _encode(obj.item(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(obj[k], indent, level + 1)}"
                 for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _idx(idx) -> str:
    return f"{idx[0]},{idx[1]}"


def matrix_to_csv(tm: TruncatedMatrix) -> str:
    """Header row holds the column basis indices, first column the row indices."""
    dense = tm.matrix.toarray()
    lines = [",".join(['""'] + [f'"{_idx(c)}"' for c in tm.window])]
    for i, row_idx in enumerate(tm.window):
        cells = [f'"{_idx(row_idx)}"'] + [format_float(float(v)) for v in dense[i]]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def matrix_to_json(tm: TruncatedMatrix, order: str = "diagonal-major") -> dict:
    coo = tm.matrix.tocoo()
    entries = sorted(
        ({"row": list(tm.window[i]), "col": list(tm.window[j]), "value": float(v)}
         for i, j, v in zip(coo.row, coo.col, coo.data)),
        key=lambda e: (e["col"][1] - e["col"][0], e["col"][0]),
    )
    return {
        "m": tm.m,
        "symbol": tm.symbol.to_json() if tm.symbol is not None else None,
        "window": [list(w) for w in tm.window],
        "order": order,
        "entries": entries,
    }


def rows_to_csv(header, rows) -> str:
    def cell(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return format_float(v)
        return str(v)
    lines = [",".join(header)] + [",".join(cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"
