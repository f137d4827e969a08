"""JSON files for states, witnesses and reports.

Matrices are lists of rows; each entry is a ``[re, im]`` pair.  Floats are
written with Python's shortest round-trip repr, which restores every double
exactly on reading.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .exceptions import ParseError, ValidationError
from .states import BipartiteState, MultiQubitState
from .witness import Witness


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(rows) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise ParseError("matrix must be a non-empty list of rows")
    n = len(rows[0]) if isinstance(rows[0], list) else -1
    out = np.empty((len(rows), max(n, 0)), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i} is not a list of length {n}")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            ):
                raise ParseError(f"entry ({i}, {j}) is not a [re, im] pair of numbers")
            if not all(math.isfinite(x) for x in entry):
                raise ParseError(f"entry ({i}, {j}) is not finite")
            out[i, j] = complex(entry[0], entry[1])
    return out


def state_to_dict(s) -> dict:
    if isinstance(s, BipartiteState):
        return {"kind": "bipartite", "d": s.d, "matrix": matrix_to_json(s.rho)}
    if isinstance(s, MultiQubitState):
        return {"kind": "multiqubit", "n": s.n, "matrix": matrix_to_json(s.rho)}
    raise TypeError(f"cannot serialize {type(s).__name__}")


def _int_field(obj, key):
    val = obj.get(key)
    if not isinstance(val, int) or isinstance(val, bool) or val < 1:
        raise ParseError(f"field {key!r} must be a positive integer")
    return val


def state_from_dict(obj, tol: float = 1e-9):
    if not isinstance(obj, dict):
        raise ParseError("state file must contain a JSON object")
    kind = obj.get("kind")
    if "matrix" not in obj:
        raise ParseError("missing field 'matrix'")
    m = matrix_from_json(obj["matrix"])
    if kind == "bipartite":
        return BipartiteState(_int_field(obj, "d"), m, tol)
    if kind == "multiqubit":
        return MultiQubitState(_int_field(obj, "n"), m, tol)
    raise ParseError(f"unknown state kind {kind!r}")


def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def load_state(path, tol: float = 1e-9):
    return state_from_dict(_read_json(path), tol)


def save_state(s, path) -> None:
    Path(path).write_text(dumps(state_to_dict(s)) + "\n")


def witness_to_dict(w: Witness) -> dict:
    return {"kind": w.kind, "constant": w.constant, "matrix": matrix_to_json(w.operator)}


def witness_from_dict(obj) -> Witness:
    if not isinstance(obj, dict) or not {"kind", "constant", "matrix"} <= obj.keys():
        raise ParseError("witness needs 'kind', 'constant' and 'matrix'")
    if not isinstance(obj["constant"], (int, float)):
        raise ParseError("'constant' must be a number")
    try:
        return Witness(matrix_from_json(obj["matrix"]), obj["constant"], obj["kind"])
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ValidationError(str(exc)) from exc


def save_witness(w: Witness, path) -> None:
    Path(path).write_text(dumps(witness_to_dict(w)) + "\n")


def load_witness(path) -> Witness:
    return witness_from_dict(_read_json(path))


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def dumps(obj, indent: int | None = None) -> str:
    return json.dumps(_plain(obj), indent=indent, allow_nan=False)
