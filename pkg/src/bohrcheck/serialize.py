"""JSON wire formats, canonical hashing, and instance payloads.

Wire formats:

- matrix:   {"n": rows, "re": [[...]], "im": [[...]]}   (row-major doubles)
- vector:   {"re": [...], "im": [...]}
- scalar:   {"re": x, "im": y}
- function: {"id": "abs_pow", "r": 2.5, "J": [lo, hi]}  ("r" only when set)
- map:      {"kind": "congruence", "X": {matrix}}
            {"kind": "povm", "P": [{matrix}, ...]}
            {"kind": "sum", "terms": [{"alpha": a, "map": {...}}, ...]}
            {"kind": "block", "i": 0, "ell": 3, "X": {matrix}}

An instance payload is one flat JSON object per theorem with a "theorem"
key; :func:`digest` hashes the canonical rendering (sorted keys, no
whitespace) with 64-bit FNV-1a, and the checkers stamp that value into
their reports so any report line can be traced back to its exact input.
"""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from .calculus import ConvexFunctionSpec, make_function_spec
from .cpmaps import (
    BlockExtraction,
    Congruence,
    DiagonalPOVM,
    MapSpec,
    SpecError,
    WeightedSum,
)
from .linalg import as_complex_matrix

__all__ = [
    "SerializationError",
    "THEOREMS",
    "canonical_theorem",
    "matrix_to_json",
    "matrix_from_json",
    "vector_to_json",
    "vector_from_json",
    "scalar_to_json",
    "scalar_from_json",
    "function_to_json",
    "function_from_json",
    "map_to_json",
    "map_from_json",
    "canonical_json",
    "fnv1a64",
    "digest",
]


class SerializationError(ValueError):
    """Malformed wire-format object."""


#: Canonical theorem identifiers, in CLI order.
THEOREMS = (
    "bohr",
    "vasic",
    "jensen-vec",
    "jensen-map",
    "thm1",
    "cornew",
    "cor45",
    "zh",
    "prop-r2",
    "sumsq",
    "inc-convex",
)

_THEOREM_ALIASES = {
    "cor4.5": "cor45",
    "jensen-vector": "jensen-vec",
    "jensen_vec": "jensen-vec",
    "jensen_map": "jensen-map",
    "prop_r2": "prop-r2",
    "inc_convex": "inc-convex",
}


def canonical_theorem(name: str) -> str:
    """Resolve a theorem identifier or alias to its canonical form."""
    t = _THEOREM_ALIASES.get(str(name), str(name))
    if t not in THEOREMS:
        raise SerializationError(f"unknown theorem {name!r}; known: {', '.join(THEOREMS)}")
    return t


# --- primitive codecs -------------------------------------------------------


def matrix_to_json(a) -> dict:
    m = as_complex_matrix(a)
    return {
        "n": int(m.shape[0]),
        "re": [[float(x) for x in row] for row in m.real],
        "im": [[float(x) for x in row] for row in m.imag],
    }


def matrix_from_json(obj) -> np.ndarray:
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed matrix object: {exc}") from exc
    if re.ndim != 2 or re.shape != im.shape or re.shape[0] != n:
        raise SerializationError(
            f"matrix shape mismatch: n={n}, re {re.shape}, im {im.shape}"
        )
    return as_complex_matrix(re + 1j * im)


def vector_to_json(x) -> dict:
    v = np.asarray(x, dtype=complex)
    if v.ndim != 1:
        raise SerializationError(f"expected a 1-d vector, got shape {v.shape}")
    return {
        "re": [float(t) for t in v.real],
        "im": [float(t) for t in v.imag],
    }


def vector_from_json(obj) -> np.ndarray:
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed vector object: {exc}") from exc
    if re.ndim != 1 or re.shape != im.shape:
        raise SerializationError(f"vector shape mismatch: re {re.shape}, im {im.shape}")
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise SerializationError("vector entries must be finite")
    return re + 1j * im


def scalar_to_json(z) -> dict:
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def scalar_from_json(obj) -> complex:
    try:
        return complex(float(obj["re"]), float(obj["im"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed complex scalar: {exc}") from exc


def function_to_json(spec: ConvexFunctionSpec) -> dict:
    out = {"id": spec.id, "J": [float(spec.domain.lo), float(spec.domain.hi)]}
    if spec.r is not None:
        out["r"] = float(spec.r)
    return out


def function_from_json(obj) -> ConvexFunctionSpec:
    try:
        fid = str(obj["id"])
        lo, hi = obj["J"]
        r = obj.get("r")
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed function object: {exc}") from exc
    try:
        return make_function_spec(fid, (float(lo), float(hi)), None if r is None else float(r))
    except (KeyError, ValueError) as exc:
        raise SerializationError(f"cannot build function spec: {exc}") from exc


def map_to_json(spec: MapSpec) -> dict:
    if isinstance(spec, Congruence):
        return {"kind": "congruence", "X": matrix_to_json(spec.x)}
    if isinstance(spec, DiagonalPOVM):
        return {"kind": "povm", "P": [matrix_to_json(p) for p in spec.effects]}
    if isinstance(spec, WeightedSum):
        return {
            "kind": "sum",
            "terms": [
                {"alpha": float(a), "map": map_to_json(sub)} for a, sub in spec.terms
            ],
        }
    if isinstance(spec, BlockExtraction):
        return {
            "kind": "block",
            "i": int(spec.index),
            "ell": int(spec.block_count),
            "X": matrix_to_json(spec.x),
        }
    raise SerializationError(
        f"map kind {type(spec).__name__} has no wire format"
    )


def map_from_json(obj) -> MapSpec:
    try:
        kind = obj["kind"]
    except (KeyError, TypeError) as exc:
        raise SerializationError(f"malformed map object: {exc}") from exc
    try:
        if kind == "congruence":
            return Congruence(matrix_from_json(obj["X"]))
        if kind == "povm":
            return DiagonalPOVM(tuple(matrix_from_json(p) for p in obj["P"]))
        if kind == "sum":
            return WeightedSum(
                tuple(
                    (float(t["alpha"]), map_from_json(t["map"])) for t in obj["terms"]
                )
            )
        if kind == "block":
            return BlockExtraction(int(obj["i"]), int(obj["ell"]), matrix_from_json(obj["X"]))
    except (KeyError, TypeError, ValueError, SpecError) as exc:
        raise SerializationError(f"cannot build {kind!r} map: {exc}") from exc
    raise SerializationError(f"unknown map kind {kind!r}")


# --- canonical hashing ------------------------------------------------------

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


def canonical_json(obj) -> str:
    """Deterministic rendering: sorted keys, minimal separators, no NaN."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a hash."""
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


def digest(obj) -> str:
    """16-hex-digit FNV-1a digest of the canonical JSON rendering."""
    return f"{fnv1a64(canonical_json(obj).encode('utf-8')):016x}"


# --- instance payload builders ---------------------------------------------


def weights_to_json(p: Sequence[float]) -> list[float]:
    return [float(x) for x in p]


def bohr_payload(z: complex, w: complex, p: float) -> dict:
    return {"theorem": "bohr", "p": float(p), "z": scalar_to_json(z), "w": scalar_to_json(w)}


def vasic_payload(z: Sequence[complex], p: Sequence[float], r: float) -> dict:
    return {
        "theorem": "vasic",
        "r": float(r),
        "p": weights_to_json(p),
        "z": vector_to_json(np.asarray(z, dtype=complex)),
    }


def jensen_vec_payload(f: ConvexFunctionSpec, a, x) -> dict:
    return {
        "theorem": "jensen-vec",
        "f": function_to_json(f),
        "A": matrix_to_json(a),
        "x": vector_to_json(x),
    }


def jensen_map_payload(f: ConvexFunctionSpec, a, spec: MapSpec, x, variant: str) -> dict:
    return {
        "theorem": "jensen-map",
        "variant": str(variant),
        "f": function_to_json(f),
        "A": matrix_to_json(a),
        "map": map_to_json(spec),
        "x": vector_to_json(x),
    }


def thm1_payload(f: ConvexFunctionSpec, a, weighted_maps) -> dict:
    return {
        "theorem": "thm1",
        "f": function_to_json(f),
        "A": matrix_to_json(a),
        "maps": [
            {"alpha": float(alpha), "map": map_to_json(spec)}
            for alpha, spec in weighted_maps
        ],
    }


def cornew_payload(f: ConvexFunctionSpec, a_list, x_list, alpha: Sequence[float]) -> dict:
    return {
        "theorem": "cornew",
        "f": function_to_json(f),
        "A": [matrix_to_json(a) for a in a_list],
        "X": [matrix_to_json(x) for x in x_list],
        "alpha": weights_to_json(alpha),
    }


def cor45_payload(a_list, x_list, p: Sequence[float], r: float) -> dict:
    return {
        "theorem": "cor45",
        "r": float(r),
        "p": weights_to_json(p),
        "A": [matrix_to_json(a) for a in a_list],
        "X": [matrix_to_json(x) for x in x_list],
    }


def zh_payload(a_list, p: Sequence[float], r: float) -> dict:
    return {
        "theorem": "zh",
        "r": float(r),
        "p": weights_to_json(p),
        "A": [matrix_to_json(a) for a in a_list],
    }


def prop_r2_payload(a_list, p: Sequence[float], r: float) -> dict:
    return {
        "theorem": "prop-r2",
        "r": float(r),
        "p": weights_to_json(p),
        "A": [matrix_to_json(a) for a in a_list],
    }


def sumsq_payload(a_list, p: Sequence[float]) -> dict:
    return {
        "theorem": "sumsq",
        "p": weights_to_json(p),
        "A": [matrix_to_json(a) for a in a_list],
    }


def inc_convex_payload(f: ConvexFunctionSpec, a_list, p: Sequence[float]) -> dict:
    return {
        "theorem": "inc-convex",
        "f": function_to_json(f),
        "p": weights_to_json(p),
        "A": [matrix_to_json(a) for a in a_list],
    }
