"""Scalar convex functions and Hermitian functional calculus.

A :class:`ConvexFunctionSpec` bundles a vectorized scalar function with the
hypothesis flags the inequality checkers consume (convexity, monotonicity,
submultiplicativity, behaviour at zero). Flags are established by numeric
grid scans, never by symbolic reasoning, so a spec can only claim what its
own evaluations support. :func:`apply_fun` lifts a spec to Hermitian
matrices through the spectral decomposition, and :func:`abs_power` computes
|A|^r for arbitrary square A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .linalg import (
    Interval,
    as_interval,
    eig_hermitian,
    hermitize,
    require_square,
)

__all__ = [
    "DomainError",
    "FLAG_NAMES",
    "SCAN_TOL",
    "DEFAULT_SCAN_GRID",
    "SPECTRUM_CLAMP_RTOL",
    "ConvexFunctionSpec",
    "FunctionFlagReport",
    "scan_function_flags",
    "validate_function_spec",
    "function_registry",
    "make_function_spec",
    "apply_fun",
    "abs_power",
]


class DomainError(ValueError):
    """Evaluation point falls outside a function's domain."""


#: Hypothesis flags carried by every function spec.
FLAG_NAMES = (
    "convex_on_J",
    "zero_in_J",
    "f0_nonpositive",
    "increasing",
    "submultiplicative",
)

#: Additive slack granted to every grid scan.
SCAN_TOL = 1e-12

#: Grid size used when a spec is constructed; tests rescan at 1000.
DEFAULT_SCAN_GRID = 129

#: Eigenvalues within this relative distance outside the domain are clamped
#: to the nearest endpoint; anything further out raises DomainError.
SPECTRUM_CLAMP_RTOL = 1e-9

#: Point count of the coarser subgrid used for product (u*v) scans.
_PRODUCT_GRID = 33


@dataclass(frozen=True)
class ConvexFunctionSpec:
    """A scalar function on a closed interval with scanned hypothesis flags.

    ``fn`` must accept and return float ndarrays. ``flags`` maps each name
    in :data:`FLAG_NAMES` to the outcome of its numeric scan at
    construction time; a True flag means the property held on the scan
    grid, nothing stronger.
    """

    id: str
    domain: Interval
    fn: Callable[[np.ndarray], np.ndarray]
    flags: Mapping[str, bool]
    r: float | None = None

    def __call__(self, t):
        return self.fn(np.asarray(t, dtype=float))

    def flag(self, name: str) -> bool:
        if name not in FLAG_NAMES:
            raise KeyError(f"unknown hypothesis flag {name!r}")
        return bool(self.flags.get(name, False))


@dataclass(frozen=True)
class FunctionFlagReport:
    """Outcome of re-running the hypothesis scans for one spec.

    ``flags`` holds the scanned verdicts; ``worst`` holds the largest
    signed violation seen per scanned property (negative or zero means the
    scan passed with margin). The submultiplicativity entry is NaN when no
    grid pair had its product inside the domain, in which case the flag is
    reported False for lack of evidence.
    """

    flags: dict[str, bool]
    worst: dict[str, float]
    grid_size: int


def _eval(fn, x) -> np.ndarray:
    out = np.asarray(fn(np.asarray(x, dtype=float)), dtype=float)
    if not np.all(np.isfinite(out)):
        raise ValueError("function evaluated to a non-finite value on its domain")
    return out


def scan_function_flags(fn, domain, grid_size: int = DEFAULT_SCAN_GRID) -> FunctionFlagReport:
    """Numeric hypothesis scans for a scalar function on an interval.

    Convexity is the pairwise midpoint test f((u+v)/2) <= (f(u)+f(v))/2,
    monotonicity checks consecutive grid differences, and
    submultiplicativity checks f(u*v) <= f(u)f(v) over a coarser subgrid
    restricted to pairs whose product stays in the domain. Each test gets
    :data:`SCAN_TOL` of slack relative to the local value magnitude, so
    exact-equality cases (|t|^r is multiplicative) survive roundoff on
    wide domains; reported worst violations are in those relative units.
    """
    if grid_size < 3:
        raise ValueError(f"grid_size must be >= 3, got {grid_size}")
    iv = as_interval(domain)
    grid = np.linspace(iv.lo, iv.hi, grid_size)
    vals = _eval(fn, grid)
    val_scale = max(1.0, float(np.max(np.abs(vals))))

    zero_in = iv.lo <= 0.0 <= iv.hi
    if zero_in:
        f0 = float(_eval(fn, [0.0])[0])
        f0_worst = f0
        f0_ok = f0 <= SCAN_TOL
    else:
        f0_worst = math.nan
        f0_ok = False

    u = grid[:, None]
    v = grid[None, :]
    midvals = _eval(fn, (u + v) / 2.0)
    means = 0.5 * (vals[:, None] + vals[None, :])
    conv_worst = float(np.max((midvals - means) / np.maximum(1.0, np.abs(means))))
    convex = conv_worst <= SCAN_TOL

    diffs = vals[1:] - vals[:-1]
    mono_worst = float(np.max(-diffs)) / val_scale if diffs.size else 0.0
    increasing = mono_worst <= SCAN_TOL

    sub = np.linspace(iv.lo, iv.hi, min(_PRODUCT_GRID, grid_size))
    subvals = _eval(fn, sub)
    prod = sub[:, None] * sub[None, :]
    mask = (prod >= iv.lo) & (prod <= iv.hi)
    if np.any(mask):
        fprod = _eval(fn, prod[mask])
        fpair = (subvals[:, None] * subvals[None, :])[mask]
        sub_worst = float(np.max((fprod - fpair) / np.maximum(1.0, np.abs(fpair))))
        submult = sub_worst <= SCAN_TOL
    else:
        sub_worst = math.nan
        submult = False

    flags = {
        "convex_on_J": convex,
        "zero_in_J": zero_in,
        "f0_nonpositive": f0_ok,
        "increasing": increasing,
        "submultiplicative": submult,
    }
    worst = {
        "convex_on_J": conv_worst,
        "f0_nonpositive": f0_worst,
        "increasing": mono_worst,
        "submultiplicative": sub_worst,
    }
    return FunctionFlagReport(flags=flags, worst=worst, grid_size=grid_size)


def validate_function_spec(spec: ConvexFunctionSpec, grid_size: int = 1000) -> FunctionFlagReport:
    """Re-run the hypothesis scans for a spec at a chosen grid resolution."""
    return scan_function_flags(spec.fn, spec.domain, grid_size)


# --- registry ---------------------------------------------------------------


def _abs_pow(r: float):
    def fn(t: np.ndarray) -> np.ndarray:
        return np.abs(t) ** r

    return fn


def _half_pow(r: float):
    def fn(t: np.ndarray) -> np.ndarray:
        # Domain is restricted to t >= 0; the clip only guards roundoff.
        return np.clip(t, 0.0, None) ** (r / 2.0)

    return fn


def _square(_):
    return lambda t: np.square(np.asarray(t, dtype=float))


def _expm1(_):
    return lambda t: np.expm1(np.asarray(t, dtype=float))


def _relu(_):
    return lambda t: np.maximum(np.asarray(t, dtype=float), 0.0)


def _linear(_):
    return lambda t: np.asarray(t, dtype=float) + 0.0


# id -> (factory, takes r, requires nonnegative domain)
_REGISTRY: dict[str, tuple[Callable, bool, bool]] = {
    "abs_pow": (_abs_pow, True, False),
    "half_pow": (_half_pow, True, True),
    "square": (_square, False, False),
    "expm1": (_expm1, False, False),
    "relu": (_relu, False, False),
    "linear": (_linear, False, False),
}


def function_registry() -> tuple[str, ...]:
    """Identifiers accepted by :func:`make_function_spec`, sorted."""
    return tuple(sorted(_REGISTRY))


def make_function_spec(
    fid: str,
    domain,
    r: float | None = None,
    grid_size: int = DEFAULT_SCAN_GRID,
) -> ConvexFunctionSpec:
    """Build a registry function on a domain and scan its hypothesis flags.

    ``r`` is required for the parametric families (abs_pow, half_pow) and
    rejected otherwise. half_pow additionally requires a nonnegative
    domain, since t^(r/2) is only defined there.
    """
    if fid not in _REGISTRY:
        raise KeyError(f"unknown function id {fid!r}; known: {', '.join(function_registry())}")
    factory, takes_r, nonneg_domain = _REGISTRY[fid]
    iv = as_interval(domain)
    if takes_r:
        if r is None:
            raise ValueError(f"function {fid!r} requires parameter r")
        r = float(r)
        if not math.isfinite(r) or r <= 0:
            raise ValueError(f"parameter r must be finite and positive, got {r}")
    elif r is not None:
        raise ValueError(f"function {fid!r} takes no parameter r")
    if nonneg_domain and iv.lo < 0:
        raise DomainError(f"function {fid!r} needs a nonnegative domain, got {iv}")
    fn = factory(r)
    report = scan_function_flags(fn, iv, grid_size)
    return ConvexFunctionSpec(id=fid, domain=iv, fn=fn, flags=dict(report.flags), r=r)


# --- functional calculus ----------------------------------------------------


def apply_fun(spec: ConvexFunctionSpec, a) -> np.ndarray:
    """f(A) = U diag(f(lambda)) U* for Hermitian A with spectrum in f's domain.

    Eigenvalues within SPECTRUM_CLAMP_RTOL * max(1, spectral radius) outside
    the domain are clamped to the nearest endpoint; anything further out
    raises :class:`DomainError`.
    """
    w, u = eig_hermitian(a)
    scale = max(1.0, float(np.max(np.abs(w))))
    tol = SPECTRUM_CLAMP_RTOL * scale
    iv = spec.domain
    if not iv.contains(w, tol):
        raise DomainError(
            f"spectrum [{w.min():.6g}, {w.max():.6g}] escapes domain "
            f"[{iv.lo:g}, {iv.hi:g}] beyond tolerance {tol:.3g}"
        )
    fw = _eval(spec.fn, iv.clamp(w))
    return hermitize((u * fw) @ u.conj().T)


def abs_power(a, r: float) -> np.ndarray:
    """|A|^r for any square A and real exponent r >= 1.

    Computed from the spectral decomposition of A*A as (A*A)^(r/2), which
    avoids forming |A| first; r < 1 is rejected because the family used
    throughout is the convex one.
    """
    r = float(r)
    if not math.isfinite(r) or r < 1.0:
        raise DomainError(f"exponent must satisfy r >= 1, got {r}")
    m = require_square(a)
    gram = hermitize(m.conj().T @ m)
    w, u = np.linalg.eigh(gram)
    w = np.clip(w, 0.0, None)
    return hermitize((u * w ** (r / 2.0)) @ u.conj().T)
