"""Deterministic serialization helpers (JSON / CSV with fixed float format).

All emitted floats use 17 significant digits so identical invocations are
byte-identical across runs and platforms with IEEE doubles.
"""

import math

import numpy as np


def fmt(x):
    """Format a real number with 17 significant digits."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("refusing to serialize a non-finite number")
    return format(x, ".17g")


def _emit(obj, out, indent, level):
    pad = " " * (indent * level)
    inner = " " * (indent * (level + 1))
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(f'{inner}"{k}": ')
            _emit(v, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            out.append("[]")
            return
        flat = all(isinstance(v, (bool, int, float, str, np.floating, np.integer))
                   for v in seq)
        if flat:
            out.append("[" + ", ".join(_scalar(v) for v in seq) + "]")
            return
        out.append("[\n")
        for i, v in enumerate(seq):
            out.append(inner)
            _emit(v, out, indent, level + 1)
            out.append(",\n" if i < len(seq) - 1 else "\n")
        out.append(pad + "]")
    else:
        out.append(_scalar(obj))


def _scalar(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt(v)
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if v is None:
        return "null"
    raise TypeError(f"cannot serialize {type(v)}")


def json_text(obj, indent=2):
    """Deterministic JSON with .17g floats; ends with a newline."""
    out = []
    _emit(obj, out, indent, 0)
    return "".join(out) + "\n"


def matrix_to_pairs(m):
    """Row-major [re, im] pairs for a complex matrix."""
    m = np.asarray(m, dtype=np.complex128)
    return [[float(z.real), float(z.imag)] for z in m.ravel(order="C")]


def pairs_to_matrix(pairs, rows, cols):
    """Inverse of :func:`matrix_to_pairs`."""
    flat = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
    if flat.size != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {flat.size}")
    if not np.isfinite(flat.view(np.float64)).all():
        raise ValueError("matrix entries must be finite")
    return flat.reshape(rows, cols)


def vector_to_pairs(v):
    v = np.asarray(v, dtype=np.complex128)
    return [[float(z.real), float(z.imag)] for z in v]


def csv_rows(header, rows):
    """CSV text from a header tuple and rows of real numbers."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(x) for x in row))
    return "\n".join(lines) + "\n"
