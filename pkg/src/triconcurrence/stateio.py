"""Reading and writing state files: a self-describing JSON layout with
explicit dimensions and complex entries as [re, im] pairs."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .states import DensityMatrix, PureState, TripartiteDims


class StateFileError(ValueError):
    """Malformed state file; message carries field or line context."""


def _complex_pair(value, where: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, (int, float)) for v in value)
    ):
        raise StateFileError(f"{where}: expected a [re, im] pair, got {value!r}")
    return complex(float(value[0]), float(value[1]))


def state_to_dict(state: PureState | DensityMatrix) -> dict:
    """JSON-ready mapping with dims, kind and flattened complex pairs."""
    if isinstance(state, PureState):
        vec = state.vector
        data = [[float(z.real), float(z.imag)] for z in vec]
        return {"dims": list(state.dims.as_tuple()), "kind": "pure", "data": data}
    if isinstance(state, DensityMatrix):
        data = [
            [[float(z.real), float(z.imag)] for z in row]
            for row in np.asarray(state.mat)
        ]
        return {"dims": list(state.dims.as_tuple()), "kind": "mixed", "data": data}
    raise TypeError(f"cannot serialize {type(state).__name__}")


def state_from_dict(doc: dict) -> PureState | DensityMatrix:
    """Rebuild a state from its mapping form, applying all state validators."""
    if not isinstance(doc, dict):
        raise StateFileError(f"top level: expected an object, got {type(doc).__name__}")
    for field in ("dims", "kind", "data"):
        if field not in doc:
            raise StateFileError(f"missing field {field!r}")
    dims_raw = doc["dims"]
    if not (isinstance(dims_raw, list) and len(dims_raw) == 3 and all(isinstance(d, int) for d in dims_raw)):
        raise StateFileError(f"field 'dims': expected three integers, got {dims_raw!r}")
    try:
        dims = TripartiteDims(*dims_raw)
    except ValueError as exc:
        raise StateFileError(f"field 'dims': {exc}") from exc

    kind = doc["kind"]
    data = doc["data"]
    d = dims.total
    if kind == "pure":
        if not isinstance(data, list) or len(data) != d:
            raise StateFileError(f"field 'data': expected {d} amplitude pairs, got length {_length(data)}")
        vec = np.array([_complex_pair(v, f"data[{i}]") for i, v in enumerate(data)])
        try:
            return PureState(dims, vec.reshape(dims.as_tuple()))
        except ValueError as exc:
            raise StateFileError(f"invalid pure state: {exc}") from exc
    if kind == "mixed":
        if not isinstance(data, list) or len(data) != d:
            raise StateFileError(f"field 'data': expected {d} rows, got length {_length(data)}")
        mat = np.empty((d, d), dtype=complex)
        for r, row in enumerate(data):
            if not isinstance(row, list) or len(row) != d:
                raise StateFileError(f"data[{r}]: expected {d} entry pairs, got length {_length(row)}")
            for c, v in enumerate(row):
                mat[r, c] = _complex_pair(v, f"data[{r}][{c}]")
        try:
            return DensityMatrix.from_matrix(dims, mat)
        except ValueError as exc:
            raise StateFileError(f"invalid density matrix: {exc}") from exc
    raise StateFileError(f"field 'kind': expected 'pure' or 'mixed', got {kind!r}")


def _length(value) -> str:
    try:
        return str(len(value))
    except TypeError:
        return f"non-list {type(value).__name__}"


def save_state(path: str | Path, state: PureState | DensityMatrix) -> None:
    """Write a state file; float repr round-trips every value exactly."""
    Path(path).write_text(json.dumps(state_to_dict(state), indent=1) + "\n", encoding="utf-8")


def load_state(path: str | Path) -> PureState | DensityMatrix:
    """Read and validate a state file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return state_from_dict(doc)
