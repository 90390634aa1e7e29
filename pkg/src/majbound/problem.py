"""JSON problem documents (schema version 1) and number formatting.

A problem looks like::

    {"v": 1, "dimension": 2, "spectrum": [1, 0],
     "measurements": [
        {"type": "projective", "basis": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]},
        {"type": "povm", "effects": [...]}]}

Complex entries are ``[re, im]`` pairs (a bare real number is also
accepted).  Basis vectors are the *columns* of ``basis``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .errors import MajboundError
from .lattice import DistVector
from .quantum import Measurement, QuantumState, pure_spectrum, unit_spectrum

SCHEMA_VERSION = 1
SIG_DIGITS = 12


class SchemaError(MajboundError, ValueError):
    """Malformed problem/state document; ``field`` names the offending path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class Problem:
    dimension: int
    spectrum: DistVector
    measurements: list[Measurement]


def fmt(x: float) -> float:
    """Round to 12 significant digits; ``json`` then prints the shortest repr."""
    return float(format(float(x), f".{SIG_DIGITS}g"))


def fmt_list(v) -> list[float]:
    return [fmt(x) for x in np.asarray(v, dtype=float).reshape(-1)]


def _complex_matrix(raw: Any, where: str, dim: int) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != dim:
        raise SchemaError(where, f"expected {dim} rows")
    out = np.zeros((dim, dim), dtype=complex)
    for r, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise SchemaError(f"{where}[{r}]", f"expected {dim} entries")
        for c, entry in enumerate(row):
            out[r, c] = _complex_entry(entry, f"{where}[{r}][{c}]")
    return out


def _complex_entry(entry: Any, where: str) -> complex:
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        return complex(entry)
    if (
        isinstance(entry, list)
        and len(entry) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
    ):
        return complex(entry[0], entry[1])
    raise SchemaError(where, "expected a number or an [re, im] pair")


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[fmt(z.real), fmt(z.imag)] for z in row] for row in m]


def parse_problem(doc: Any) -> Problem:
    if not isinstance(doc, dict):
        raise SchemaError("<root>", "expected a JSON object")
    if doc.get("v") != SCHEMA_VERSION:
        raise SchemaError("v", f"schema version must be {SCHEMA_VERSION}")
    dim = doc.get("dimension")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SchemaError("dimension", "expected a positive integer")
    raw_spec = doc.get("spectrum")
    if raw_spec is None:
        spectrum = pure_spectrum(dim)
    else:
        if not isinstance(raw_spec, list) or len(raw_spec) != dim:
            raise SchemaError("spectrum", f"expected a list of {dim} numbers")
        try:
            spectrum = unit_spectrum(raw_spec)
        except (ValueError, TypeError) as exc:
            raise SchemaError("spectrum", str(exc)) from exc
    raw_ms = doc.get("measurements")
    if not isinstance(raw_ms, list) or not raw_ms:
        raise SchemaError("measurements", "expected a non-empty list")
    ms = []
    for j, item in enumerate(raw_ms):
        where = f"measurements[{j}]"
        if not isinstance(item, dict):
            raise SchemaError(where, "expected an object")
        kind = item.get("type")
        try:
            if kind == "projective":
                basis = _complex_matrix(item.get("basis"), f"{where}.basis", dim)
                ms.append(Measurement.projective(basis))
            elif kind == "povm":
                effects = item.get("effects")
                if not isinstance(effects, list) or not effects:
                    raise SchemaError(f"{where}.effects", "expected a non-empty list")
                mats = [_complex_matrix(e, f"{where}.effects[{k}]", dim) for k, e in enumerate(effects)]
                ms.append(Measurement.povm(mats))
            else:
                raise SchemaError(f"{where}.type", "expected 'projective' or 'povm'")
        except SchemaError:
            raise
        except MajboundError as exc:
            raise SchemaError(where, str(exc)) from exc
    return Problem(dim, spectrum, ms)


def problem_to_json(ms: Sequence[Measurement], spectrum=None) -> dict:
    dim = ms[0].dim
    doc: dict[str, Any] = {"v": SCHEMA_VERSION, "dimension": dim}
    if spectrum is not None:
        doc["spectrum"] = [float(x) for x in np.asarray(spectrum, dtype=float)]
    items = []
    for m in ms:
        if m.kind == "projective":
            items.append({"type": "projective", "basis": matrix_to_json(m.basis)})
        else:
            items.append({"type": "povm", "effects": [matrix_to_json(e) for e in m.effects]})
    doc["measurements"] = items
    return doc


def parse_state(doc: Any, dim: int) -> QuantumState:
    """``{"v": 1, "psi": [[re, im], ...]}`` or ``{"v": 1, "rho": <matrix>}``."""
    if not isinstance(doc, dict):
        raise SchemaError("<root>", "expected a JSON object")
    if doc.get("v") != SCHEMA_VERSION:
        raise SchemaError("v", f"schema version must be {SCHEMA_VERSION}")
    if "psi" in doc:
        raw = doc["psi"]
        if not isinstance(raw, list) or len(raw) != dim:
            raise SchemaError("psi", f"expected {dim} amplitudes")
        psi = np.array([_complex_entry(x, f"psi[{i}]") for i, x in enumerate(raw)])
        if np.linalg.norm(psi) == 0:
            raise SchemaError("psi", "zero vector")
        return QuantumState.pure(psi)
    if "rho" in doc:
        rho = _complex_matrix(doc["rho"], "rho", dim)
        try:
            return QuantumState.from_density(rho)
        except MajboundError as exc:
            raise SchemaError("rho", str(exc)) from exc
    raise SchemaError("psi", "state needs a 'psi' or 'rho' field")


def parse_vector(doc: Any, where: str = "vector") -> np.ndarray:
    raw = doc.get("vector") if isinstance(doc, dict) else doc
    if not isinstance(raw, list) or not raw:
        raise SchemaError(where, "expected a non-empty list of numbers")
    for i, x in enumerate(raw):
        if not isinstance(x, (int, float)) or isinstance(x, bool):
            raise SchemaError(f"{where}[{i}]", "expected a number")
    return np.array(raw, dtype=float)


def load_json(path, where: str = "<input>") -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(where, f"invalid JSON in {path}: {exc}") from exc
