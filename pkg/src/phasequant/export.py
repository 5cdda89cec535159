"""Deterministic JSON/CSV writers.

Floats are written with 17 significant digits, which round-trips every
IEEE double exactly.  Complex numbers become ``{"re": .., "im": ..}`` and
matrices row-major nested lists next to an explicit ``dim``.
"""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .operators import OperatorMatrix


def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = "%.17g" % x
    if not any(ch in text for ch in ".en"):
        # keep a float marker so "-0" and integral values load back as floats
        text += ".0"
    return text


def complex_pair(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def matrix_payload(a: OperatorMatrix) -> dict:
    return {
        "dim": a.dim,
        "hermitian": a.hermitian,
        "entries": [[complex_pair(z) for z in row] for row in a.entries],
    }


def vector_payload(v) -> list:
    return [complex_pair(z) for z in np.asarray(v).ravel()]


def matrix_from_payload(obj: dict) -> OperatorMatrix:
    dim = int(obj["dim"])
    rows = obj["entries"]
    entries = np.array(
        [[complex(float(z["re"]), float(z["im"])) for z in row] for row in rows], dtype=complex
    )
    if entries.shape != (dim, dim):
        raise ValueError(f"entries shape {entries.shape} disagrees with dim {dim}")
    return OperatorMatrix(entries, hermitian=bool(obj.get("hermitian", False)))


def _encode(obj, out: list) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(obj))
    elif isinstance(obj, (complex, np.complexfloating)):
        _encode(complex_pair(obj), out)
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(key)))
            out.append(": ")
            _encode(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, value in enumerate(obj):
            if i:
                out.append(", ")
            _encode(value, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """JSON text with fixed float formatting; key order is insertion order."""
    out: list[str] = []
    _encode(obj, out)
    return "".join(out) + "\n"


def loads(text: str):
    return json.loads(text)


def csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [format_float(v) if isinstance(v, (float, np.floating)) else v for v in row]
        )
    return buf.getvalue()


def matrix_rows(a: OperatorMatrix):
    for r in range(a.dim):
        for c in range(a.dim):
            z = complex(a.entries[r, c])
            yield (r, c, z.real, z.imag)


def csv_to_matrix(text: str) -> OperatorMatrix:
    rows = list(csv.DictReader(io.StringIO(text)))
    dim = 1 + max(int(r["row"]) for r in rows)
    entries = np.zeros((dim, dim), dtype=complex)
    for r in rows:
        entries[int(r["row"]), int(r["col"])] = complex(float(r["re"]), float(r["im"]))
    return OperatorMatrix(entries)
