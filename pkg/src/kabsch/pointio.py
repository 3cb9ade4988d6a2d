"""Plain-text point and motion files.

Point files hold one point per line (row ``i`` is ``p_i`` or ``q_i``),
coordinates separated by commas and/or whitespace. Motion files hold the
``d`` rotation rows followed by one translation line. Blank lines and
lines starting with ``#`` are ignored in both.
"""

import re

import numpy as np

from .linalg import determinant, is_orthogonal
from .rigid import RigidMotion

__all__ = [
    "PointFileError",
    "parse_pointset",
    "parse_motion",
    "format_number",
    "write_pointset",
    "write_motion",
]

_SPLIT = re.compile(r"[,\s]+")


class PointFileError(ValueError):
    """Malformed or unreadable input file."""


def format_number(x):
    """17 significant digits, enough to round-trip any double."""
    return format(float(x) + 0.0, ".17g")


def _read_rows(path):
    try:
        with open(path) as f:
            lines = f.readlines()
    except OSError as exc:
        raise PointFileError(f"{path}: cannot read file: {exc.strerror}") from exc

    rows = []
    width = None
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        tokens = [tok for tok in _SPLIT.split(text) if tok]
        try:
            values = [float(tok) for tok in tokens]
        except ValueError:
            bad = next(tok for tok in tokens if not _is_float(tok))
            raise PointFileError(f"{path}:{lineno}: non-numeric token {bad!r}") from None
        if not all(np.isfinite(values)):
            raise PointFileError(f"{path}:{lineno}: non-finite coordinate")
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise PointFileError(
                f"{path}:{lineno}: expected {width} coordinates, found {len(values)}"
            )
        rows.append(values)
    return rows


def _is_float(tok):
    try:
        float(tok)
    except ValueError:
        return False
    return True


def parse_pointset(path):
    """Read a point file into an ``(n, d)`` array."""
    rows = _read_rows(path)
    if not rows:
        raise PointFileError(f"{path}: no points found")
    return np.array(rows, dtype=float)


def parse_motion(path, tol=1e-6):
    """Read a motion file; the rotation block must be orthogonal with det 1 within `tol`."""
    rows = _read_rows(path)
    if not rows:
        raise PointFileError(f"{path}: empty motion file")
    d = len(rows[0])
    if len(rows) != d + 1:
        raise PointFileError(
            f"{path}: expected {d} rotation rows plus one translation row, found {len(rows)} rows"
        )
    U = np.array(rows[:d])
    t = np.array(rows[d])
    if not is_orthogonal(U, tol) or abs(determinant(U) - 1.0) > tol:
        raise PointFileError(f"{path}: rotation block is not a rotation (orthogonal, det 1)")
    return RigidMotion(U, t)


def _write_rows(path, rows, header=None):
    with open(path, "w") as f:
        if header:
            f.write(f"# {header}\n")
        for row in rows:
            f.write(" ".join(format_number(x) for x in row) + "\n")


def write_pointset(path, A):
    _write_rows(path, np.asarray(A, dtype=float))


def write_motion(path, m):
    _write_rows(path, [*m.rotation, m.translation], header="rotation rows, then translation")
