"""JSON file formats.

Frame / vector-list file::

    {"dim": n, "vectors": [[[w, x, y, z], ... n entries], ... m vectors]}

Signal file::

    {"dim": n, "entries": [[w, x, y, z], ... n entries]}

Floats are written with ``repr`` precision, so every number reads back bit-for-bit.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import ParseError, ValidationError
from .frames import Frame


def _read_json(path) -> dict:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    return doc


def _dim(doc: dict, path) -> int:
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise ParseError(f"{path}: 'dim' must be an integer")
    if dim < 1:
        raise ValidationError(f"{path}: 'dim' must be positive, got {dim}")
    return dim


def _quaternion_row(entries, dim: int, path, where: str) -> np.ndarray:
    if not isinstance(entries, list):
        raise ParseError(f"{path}: {where} must be a list of quaternions")
    if len(entries) != dim:
        raise ValidationError(f"{path}: {where} has {len(entries)} entries, dim is {dim}")
    out = np.empty((dim, 4))
    for i, q in enumerate(entries):
        if not isinstance(q, list) or len(q) != 4:
            raise ParseError(f"{path}: {where}[{i}] must be a [w, x, y, z] array")
        for c, v in enumerate(q):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"{path}: {where}[{i}][{c}] is not a number")
            if not math.isfinite(v):
                raise ValidationError(f"{path}: {where}[{i}][{c}] is not finite")
            out[i, c] = v
    return out


def read_vectors(path) -> np.ndarray:
    """Vector list in frame-file layout as an ``(m, n, 4)`` array; no spanning checks."""
    doc = _read_json(path)
    dim = _dim(doc, path)
    vectors = doc.get("vectors")
    if not isinstance(vectors, list):
        raise ParseError(f"{path}: 'vectors' must be a list")
    if not vectors:
        raise ValidationError(f"{path}: 'vectors' is empty")
    return np.stack([_quaternion_row(v, dim, path, f"vectors[{k}]") for k, v in enumerate(vectors)])


def load_frame(path) -> Frame:
    return Frame(read_vectors(path))


def load_signal(path) -> np.ndarray:
    doc = _read_json(path)
    dim = _dim(doc, path)
    return _quaternion_row(doc.get("entries"), dim, path, "entries")


def to_nested(a) -> list:
    """Array of quaternions to nested lists of Python floats."""
    return np.asarray(a, dtype=float).tolist()


def frame_document(vectors) -> dict:
    v = np.asarray(vectors, dtype=float)
    return {"dim": int(v.shape[1]), "vectors": to_nested(v)}


def signal_document(f) -> dict:
    f = np.asarray(f, dtype=float)
    return {"dim": int(f.shape[0]), "entries": to_nested(f)}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False)


def save_frame(path, vectors) -> None:
    Path(path).write_text(dumps(frame_document(vectors)) + "\n")


def save_signal(path, f) -> None:
    Path(path).write_text(dumps(signal_document(f)) + "\n")
