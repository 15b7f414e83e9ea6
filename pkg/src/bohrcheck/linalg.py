"""Dense complex linear algebra with reproducible randomness.

Everything downstream sits on this module: validated complex matrices,
Hermitian eigendecomposition with a fixed (descending) eigenvalue order,
the matrix absolute value, and seeded generators for structured random
inputs. Randomized helpers take an explicit ``numpy.random.Generator``;
independent work items get decorrelated counter-based streams via
:func:`make_rng` so campaigns replay bit-identically.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

__all__ = [
    "MASK64",
    "HERMITIAN_RTOL",
    "DimensionError",
    "EigenConvergenceError",
    "Interval",
    "as_interval",
    "mix64",
    "stream_key",
    "make_rng",
    "as_complex_matrix",
    "require_square",
    "require_hermitian",
    "hermitize",
    "hermiticity_defect",
    "frob",
    "EigenDecomposition",
    "eig_hermitian",
    "eigvals_descending",
    "abs_matrix",
    "complex_gaussian",
    "random_unitary",
    "random_hermitian",
    "random_map_family",
]

MASK64 = (1 << 64) - 1

#: Relative tolerance for accepting a matrix as Hermitian:
#: ||A - A*||_F <= HERMITIAN_RTOL * max(1, ||A||_F).
HERMITIAN_RTOL = 1e-12


class DimensionError(ValueError):
    """Input shape is unusable for the requested operation."""


class EigenConvergenceError(RuntimeError):
    """The eigensolver backend failed to converge."""


class Interval(NamedTuple):
    """Closed real interval [lo, hi]; degenerate (lo == hi) is allowed."""

    lo: float
    hi: float

    def validate(self) -> "Interval":
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"interval endpoints must be finite, got {self!r}")
        if self.hi < self.lo:
            raise ValueError(f"interval is empty: {self!r}")
        return self

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, values, tol: float = 0.0) -> bool:
        v = np.asarray(values, dtype=float)
        return bool(np.all(v >= self.lo - tol) and np.all(v <= self.hi + tol))

    def clamp(self, values) -> np.ndarray:
        return np.clip(np.asarray(values, dtype=float), self.lo, self.hi)


def as_interval(obj) -> Interval:
    """Coerce a 2-sequence (lo, hi) to a validated Interval."""
    if isinstance(obj, Interval):
        return obj.validate()
    lo, hi = obj
    return Interval(float(lo), float(hi)).validate()


# --- seeded stream derivation ---------------------------------------------

_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_SPLITMIX_M1 = 0xBF58476D1CE4E5B9
_SPLITMIX_M2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """SplitMix64 finalizer; bijective mixing on 64-bit integers."""
    x &= MASK64
    x ^= x >> 30
    x = (x * _SPLITMIX_M1) & MASK64
    x ^= x >> 27
    x = (x * _SPLITMIX_M2) & MASK64
    x ^= x >> 31
    return x


def stream_key(seed: int, stream: int) -> int:
    """64-bit key for a (seed, stream) pair.

    Distinct streams under one seed are decorrelated, so per-trial
    generators can be derived without sharing mutable state.
    """
    return mix64((int(seed) + _SPLITMIX_GAMMA * (int(stream) + 1)) & MASK64)


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator for (seed, stream).

    Identical pairs yield identical sequences on every platform, which is
    what makes fuzz campaigns byte-reproducible.
    """
    return np.random.Generator(np.random.Philox(key=stream_key(seed, stream)))


# --- validation helpers ----------------------------------------------------


def as_complex_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex ndarray with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionError(
            f"expected a 2-d matrix with positive dimensions, got shape {m.shape}"
        )
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def require_square(a) -> np.ndarray:
    m = as_complex_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return m


def frob(a) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(a, "fro"))


def hermitize(a: np.ndarray) -> np.ndarray:
    """Hermitian part (A + A*)/2; projects out roundoff asymmetry."""
    return 0.5 * (a + a.conj().T)


def hermiticity_defect(a) -> float:
    """||A - A*||_F relative to max(1, ||A||_F)."""
    m = require_square(a)
    return frob(m - m.conj().T) / max(1.0, frob(m))


def require_hermitian(a, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    m = require_square(a)
    defect = frob(m - m.conj().T)
    if defect > rtol * max(1.0, frob(m)):
        raise ValueError(
            f"matrix is not Hermitian: ||A - A*||_F = {defect:.3e} exceeds "
            f"{rtol:g} * max(1, ||A||_F)"
        )
    return m


# --- eigendecomposition and matrix absolute value --------------------------


class EigenDecomposition(NamedTuple):
    """Spectral factorization A = U diag(w) U*.

    ``eigenvalues`` are real and sorted descending; column j of
    ``eigenvectors`` pairs with ``eigenvalues[j]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eig_hermitian(a, rtol: float = HERMITIAN_RTOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Ties keep the backend's order (stable sort), so the output is a
    deterministic function of the input.
    """
    m = require_hermitian(a, rtol)
    try:
        w, u = np.linalg.eigh(hermitize(m))
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(f"eigensolver failed to converge: {exc}") from exc
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(w[order], u[:, order])


def eigvals_descending(a) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, descending."""
    return eig_hermitian(a).eigenvalues


def abs_matrix(a) -> np.ndarray:
    """Matrix absolute value |A| = (A*A)^(1/2); A may be any square matrix.

    Built from the spectral decomposition of the Gram matrix A*A, with
    negative eigenvalue roundoff clamped to zero, so the result is exactly
    Hermitian and PSD up to floating noise.
    """
    m = require_square(a)
    gram = hermitize(m.conj().T @ m)
    try:
        w, u = np.linalg.eigh(gram)
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(f"eigensolver failed to converge: {exc}") from exc
    w = np.clip(w, 0.0, None)
    return hermitize((u * np.sqrt(w)) @ u.conj().T)


# --- random structured inputs ----------------------------------------------


def complex_gaussian(shape, rng: np.random.Generator) -> np.ndarray:
    """Standard complex Gaussian array: (N(0,1) + i N(0,1)) / sqrt(2)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed n x n unitary.

    QR of a complex Ginibre draw, with column phases fixed so the R factor
    has positive diagonal; without the fix QR's sign ambiguity skews the
    distribution.
    """
    if n < 1:
        raise DimensionError(f"unitary dimension must be >= 1, got {n}")
    z = complex_gaussian((n, n), rng)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r).copy()
    d[d == 0] = 1.0
    return q * (d / np.abs(d))


def random_hermitian(n: int, interval, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian matrix with spectrum drawn uniformly in an interval.

    Conjugates a uniform eigenvalue draw by a Haar unitary, so the spectrum
    lies in [lo, hi] by construction (degenerate intervals give lam * I).
    """
    if n < 1:
        raise DimensionError(f"matrix dimension must be >= 1, got {n}")
    iv = as_interval(interval)
    lam = rng.uniform(iv.lo, iv.hi, size=n)
    u = random_unitary(n, rng)
    return hermitize((u * lam) @ u.conj().T)


def random_map_family(
    ell: int,
    n: int,
    m: int,
    weights: Sequence[float],
    rng: np.random.Generator,
) -> list[np.ndarray]:
    """Random n x m blocks X_i with sum_i w_i X_i* X_i <= I_m.

    Draws Ginibre blocks Y_i and rescales them all by
    1/sqrt(max(1, lambda_max(sum_i w_i Y_i* Y_i))), which enforces the
    operator constraint without distorting relative block shapes. All-zero
    weights make the constraint vacuous and the draws are returned unscaled.
    """
    if ell < 1:
        raise DimensionError(f"family length must be >= 1, got {ell}")
    if n < 1 or m < 1:
        raise DimensionError(f"block dimensions must be >= 1, got {n} x {m}")
    w = np.asarray(weights, dtype=float)
    if w.shape != (ell,):
        raise DimensionError(f"expected {ell} weights, got shape {w.shape}")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ValueError("weights must be finite and nonnegative")
    ys = [complex_gaussian((n, m), rng) for _ in range(ell)]
    g = np.zeros((m, m), dtype=complex)
    for wi, y in zip(w, ys):
        g += wi * (y.conj().T @ y)
    top = float(np.linalg.eigvalsh(hermitize(g))[-1]) if np.any(w > 0) else 0.0
    s = 1.0 / math.sqrt(max(1.0, top))
    return [s * y for y in ys]
