"""Inequality checkers with structured, digest-stamped reports.

Every checker follows one discipline:

- malformed inputs (wrong shapes, non-Hermitian where Hermitian is typed,
  non-finite data) raise exceptions;
- failed mathematical hypotheses (exponent ranges, weight constraints,
  operator inequalities, function flags) yield a ``not_applicable``
  verdict, never ``violated``;
- an applicable instance is graded by the minimum slack min(rhs - lhs)
  against an absolute tolerance, by default 1e-8 times
  max(1, largest |partial sum|).

``partial_sums_lhs/rhs`` hold top-k partial sums for the weak-majorization
statements and per-index values for the pointwise ones (``extras`` carries
a ``comparison`` tag). Near-ties within 1e-10 of scale are reported in
``extras["equality_ks"]`` but never required. ``input_digest`` is the
FNV-1a hash of the canonical instance payload, so every report line can be
traced to the exact input that produced it.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import serialize
from .calculus import ConvexFunctionSpec, abs_power, apply_fun
from .cpmaps import MapSpec, map_dims, apply_map, applied_to_identity
from .linalg import (
    DimensionError,
    as_complex_matrix,
    eig_hermitian,
    frob,
    hermitize,
    require_hermitian,
    require_square,
)
from .majorization import singular_values

__all__ = [
    "DEFAULT_RTOL",
    "EQUALITY_RTOL",
    "WEIGHT_SUM_TOL",
    "OPERATOR_HYP_TOL",
    "WeightVector",
    "CheckReport",
    "default_tolerance",
    "check_scalar_bohr",
    "check_vasic_keckic",
    "check_jensen_vector",
    "check_jensen_map",
    "check_thm_weak_major",
    "check_cor_congruence",
    "check_eigen_bohr",
    "check_norm_bohr",
    "check_pointwise_bohr_r2",
    "check_sum_square",
    "check_increasing_convex_eigen",
]

#: Default tolerance is DEFAULT_RTOL * max(1, largest |partial sum|).
DEFAULT_RTOL = 1e-8

#: Slack within EQUALITY_RTOL * scale of zero is flagged as a near-equality.
EQUALITY_RTOL = 1e-10

#: Normalized weights must sum to 1 within this.
WEIGHT_SUM_TOL = 1e-12

#: Operator hypothesis checks (Phi(I) <= I etc.) get this relative slack.
OPERATOR_HYP_TOL = 1e-10

#: Tolerance on vector norm hypotheses (||x|| <= 1, ||x|| = 1).
_NORM_TOL = 1e-12

#: Spectra may poke this far (times scale) outside a function domain before
#: the domain hypothesis fails; within it they are clamped.
_DOMAIN_RTOL = 1e-9


@dataclass(frozen=True)
class WeightVector:
    """Positive weights with a named constraint, validated at construction.

    Constraints: ``positive`` (every w_i > 0), ``sum_to_one`` (every
    w_i in (0, 1] and the total is 1 within WEIGHT_SUM_TOL), and ``bohr``
    (every w_i > 0 together with an exponent r > 1; the derived quantities
    are w_i^(1/(1-r)), always read with exponent 1/(1-r)).
    """

    values: tuple[float, ...]
    constraint: str = "positive"
    r: float | None = None

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise ValueError("weight vector must be nonempty")
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("weights must be finite")
        if self.constraint not in ("positive", "sum_to_one", "bohr"):
            raise ValueError(f"unknown weight constraint {self.constraint!r}")
        if any(v <= 0 for v in vals):
            raise ValueError("weights must be strictly positive")
        if self.constraint == "sum_to_one":
            if any(v > 1.0 + _NORM_TOL for v in vals):
                raise ValueError("sum-to-one weights must lie in (0, 1]")
            if abs(sum(vals) - 1.0) > WEIGHT_SUM_TOL:
                raise ValueError(f"weights sum to {sum(vals)!r}, expected 1")
        if self.constraint == "bohr":
            if self.r is None or not math.isfinite(self.r) or self.r <= 1.0:
                raise ValueError("bohr weights require an exponent r > 1")
        object.__setattr__(self, "values", vals)

    def conjugate_powers(self) -> np.ndarray:
        """w_i^(1/(1-r)) for the bohr constraint."""
        if self.constraint != "bohr":
            raise ValueError("conjugate powers are defined for the bohr constraint")
        return np.asarray(self.values, dtype=float) ** (1.0 / (1.0 - self.r))


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one inequality check.

    ``verdict`` is one of "held", "violated", "not_applicable";
    ``hypothesis_report`` records every hypothesis by name, and any False
    entry forces "not_applicable". ``min_slack`` is None for inapplicable
    instances. ``elapsed`` (seconds) is informational only and excluded
    from serialized reports so campaign output stays byte-deterministic.
    """

    theorem_id: str
    verdict: str
    partial_sums_lhs: tuple[float, ...]
    partial_sums_rhs: tuple[float, ...]
    min_slack: float | None
    tol_used: float
    hypothesis_report: Mapping[str, bool]
    input_digest: str
    elapsed: float
    extras: Mapping[str, object] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == "held"

    @property
    def violated(self) -> bool:
        return self.verdict == "violated"

    @property
    def not_applicable(self) -> bool:
        return self.verdict == "not_applicable"

    def failed_hypotheses(self) -> tuple[str, ...]:
        return tuple(k for k, v in self.hypothesis_report.items() if not v)

    def to_json(self) -> dict:
        """JSON-ready dict; deterministic (elapsed deliberately excluded)."""
        return {
            "theorem_id": self.theorem_id,
            "verdict": self.verdict,
            "holds": self.holds,
            "partial_sums_lhs": list(self.partial_sums_lhs),
            "partial_sums_rhs": list(self.partial_sums_rhs),
            "min_slack": self.min_slack,
            "tol_used": self.tol_used,
            "hypothesis_report": dict(self.hypothesis_report),
            "input_digest": self.input_digest,
            "extras": dict(self.extras),
        }


def default_tolerance(lhs, rhs) -> float:
    """Absolute comparison tolerance: DEFAULT_RTOL * max(1, |sums|)."""
    scale = 1.0
    for v in (np.asarray(lhs, dtype=float), np.asarray(rhs, dtype=float)):
        if v.size:
            scale = max(scale, float(np.max(np.abs(v))))
    return DEFAULT_RTOL * scale


def _weights(p) -> np.ndarray:
    vals = p.values if isinstance(p, WeightVector) else p
    w = np.asarray(vals, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise DimensionError(f"expected a nonempty weight vector, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite")
    return w


def _na_report(theorem_id, hyps, payload, t0, tol, extras=None) -> CheckReport:
    return CheckReport(
        theorem_id=theorem_id,
        verdict="not_applicable",
        partial_sums_lhs=(),
        partial_sums_rhs=(),
        min_slack=None,
        tol_used=float(tol) if tol is not None else 0.0,
        hypothesis_report=dict(hyps),
        input_digest=serialize.digest(payload),
        elapsed=time.perf_counter() - t0,
        extras=dict(extras or {}),
    )


def _graded_report(
    theorem_id, lhs, rhs, hyps, payload, t0, tol, extras=None, comparison="partial-sums"
) -> CheckReport:
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    tol_used = float(tol) if tol is not None else default_tolerance(lhs, rhs)
    slack = rhs - lhs
    min_slack = float(np.min(slack))
    scale = max(1.0, float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))))
    equality_ks = [int(k) + 1 for k in np.nonzero(np.abs(slack) <= EQUALITY_RTOL * scale)[0]]
    merged = {"comparison": comparison, "equality_ks": equality_ks}
    merged.update(extras or {})
    return CheckReport(
        theorem_id=theorem_id,
        verdict="held" if min_slack >= -tol_used else "violated",
        partial_sums_lhs=tuple(float(x) for x in lhs),
        partial_sums_rhs=tuple(float(x) for x in rhs),
        min_slack=min_slack,
        tol_used=tol_used,
        hypothesis_report=dict(hyps),
        input_digest=serialize.digest(payload),
        elapsed=time.perf_counter() - t0,
        extras=merged,
    )


def _hermitian_family(a_list) -> list[np.ndarray]:
    mats = [require_hermitian(a) for a in a_list]
    if not mats:
        raise DimensionError("expected at least one matrix")
    n = mats[0].shape[0]
    for i, m in enumerate(mats):
        if m.shape != (n, n):
            raise DimensionError(f"matrix {i} has shape {m.shape}, expected {(n, n)}")
    return mats


def _square_family(a_list) -> list[np.ndarray]:
    mats = [require_square(a) for a in a_list]
    if not mats:
        raise DimensionError("expected at least one matrix")
    n = mats[0].shape[0]
    for i, m in enumerate(mats):
        if m.shape != (n, n):
            raise DimensionError(f"matrix {i} has shape {m.shape}, expected {(n, n)}")
    return mats


def _descending(values) -> np.ndarray:
    return np.sort(np.asarray(values, dtype=float))[::-1]


def _spectrum_in_domain(spec: ConvexFunctionSpec, eigenvalues) -> bool:
    w = np.asarray(eigenvalues, dtype=float)
    scale = max(1.0, float(np.max(np.abs(w))))
    return spec.domain.contains(w, _DOMAIN_RTOL * scale)


def _sum_weight_hyps(w: np.ndarray) -> dict[str, bool]:
    return {
        "weights in (0, 1]": bool(np.all(w > 0) and np.all(w <= 1.0 + _NORM_TOL)),
        "weights sum to 1": bool(abs(float(np.sum(w)) - 1.0) <= WEIGHT_SUM_TOL),
    }


# --- scalar inequalities -----------------------------------------------------


def check_scalar_bohr(z, w, p, tol: float | None = None) -> CheckReport:
    """|z + w|^2 <= p|z|^2 + q|w|^2 for conjugate exponents 1/p + 1/q = 1.

    Hypothesis: p > 1 (q is derived as p/(p-1)). Equality occurs exactly
    at w = (p-1) z, which is flagged in extras["equality_case"].
    """
    t0 = time.perf_counter()
    z = complex(z)
    w = complex(w)
    p = float(p)
    if not all(map(math.isfinite, (z.real, z.imag, w.real, w.imag, p))):
        raise ValueError("inputs must be finite")
    payload = serialize.bohr_payload(z, w, p)
    hyps = {"p > 1": p > 1.0}
    if not all(hyps.values()):
        return _na_report("bohr", hyps, payload, t0, tol)
    q = p / (p - 1.0)
    lhs = abs(z + w) ** 2
    rhs = p * abs(z) ** 2 + q * abs(w) ** 2
    scale = max(1.0, abs(z), abs(w))
    extras = {
        "q": q,
        "equality_case": bool(abs(w - (p - 1.0) * z) <= 1e-12 * scale),
    }
    return _graded_report("bohr", [lhs], [rhs], hyps, payload, t0, tol, extras)


def check_vasic_keckic(z, p, r, tol: float | None = None) -> CheckReport:
    """|sum_j z_j|^r <= (sum_j p_j^(1/(1-r)))^(r-1) * sum_j p_j |z_j|^r.

    Hypotheses: r > 1 and every p_j > 0. The conjugate-power exponent is
    always read as 1/(1-r) (negative for r > 1). The stationary family
    z_j = p_j^(1/(1-r)) makes both sides equal and is flagged in
    extras["stationary_point"].
    """
    t0 = time.perf_counter()
    zv = np.asarray(z, dtype=complex).ravel()
    if zv.size == 0:
        raise DimensionError("expected at least one term")
    if not np.all(np.isfinite(zv.real)) or not np.all(np.isfinite(zv.imag)):
        raise ValueError("terms must be finite")
    pw = _weights(p)
    if pw.shape != zv.shape:
        raise DimensionError(f"{zv.size} terms but {pw.size} weights")
    r = float(r)
    payload = serialize.vasic_payload(zv, pw, r)
    hyps = {"r > 1": r > 1.0, "weights positive": bool(np.all(pw > 0))}
    if not all(hyps.values()):
        return _na_report("vasic", hyps, payload, t0, tol)
    conj = pw ** (1.0 / (1.0 - r))
    const = float(np.sum(conj)) ** (r - 1.0)
    lhs = abs(np.sum(zv)) ** r
    rhs = const * float(np.sum(pw * np.abs(zv) ** r))
    scale = max(1.0, float(np.max(np.abs(zv))), float(np.max(conj)))
    extras = {
        "constant": const,
        "stationary_point": bool(np.all(np.abs(zv - conj) <= 1e-12 * scale)),
    }
    return _graded_report("vasic", [lhs], [rhs], hyps, payload, t0, tol, extras)


# --- Jensen-type inequalities ------------------------------------------------


def check_jensen_vector(f: ConvexFunctionSpec, a, x, tol: float | None = None) -> CheckReport:
    """f(<Ax, x>) <= <f(A)x, x> for Hermitian A and ||x|| <= 1.

    Hypotheses: f convex on its domain, 0 in the domain with f(0) <= 0,
    ||x|| <= 1, and the spectrum of A inside the domain. The short vector
    is what lets the missing mass sit at 0, where f is nonpositive.
    """
    t0 = time.perf_counter()
    am = require_hermitian(a)
    xv = np.asarray(x, dtype=complex).ravel()
    if xv.size != am.shape[0]:
        raise DimensionError(f"vector length {xv.size} does not match matrix {am.shape}")
    if not np.all(np.isfinite(xv.real)) or not np.all(np.isfinite(xv.imag)):
        raise ValueError("vector entries must be finite")
    payload = serialize.jensen_vec_payload(f, am, xv)
    w, _ = eig_hermitian(am)
    norm = float(np.linalg.norm(xv))
    hyps = {
        "f convex on domain": f.flag("convex_on_J"),
        "0 in domain": f.flag("zero_in_J"),
        "f(0) <= 0": f.flag("f0_nonpositive"),
        "||x|| <= 1": norm <= 1.0 + _NORM_TOL,
        "spectrum within domain": _spectrum_in_domain(f, w),
    }
    if not all(hyps.values()):
        return _na_report("jensen-vec", hyps, payload, t0, tol)
    t = float(np.real(xv.conj() @ am @ xv))
    lhs = float(f(f.domain.clamp(t)))
    rhs = float(np.real(xv.conj() @ apply_fun(f, am) @ xv))
    return _graded_report(
        "jensen-vec", [lhs], [rhs], hyps, payload, t0, tol, {"evaluation_point": t}
    )


def check_jensen_map(
    f: ConvexFunctionSpec,
    a,
    spec: MapSpec,
    x,
    variant: str = "subunital",
    tol: float | None = None,
) -> CheckReport:
    """f(<Phi(A)x, x>) <= <Phi(f(A))x, x> for a positive map Phi.

    Two hypothesis profiles:

    - "subunital": 0 < Phi(I) <= I, ||x|| <= 1, f convex with 0 in the
      domain and f(0) <= 0;
    - "unital": Phi(I) = I and ||x|| = 1, f convex; no condition at 0.
    """
    t0 = time.perf_counter()
    if variant not in ("subunital", "unital"):
        raise ValueError(f"variant must be 'subunital' or 'unital', got {variant!r}")
    am = require_hermitian(a)
    n_in, m_out = map_dims(spec)
    if am.shape[0] != n_in:
        raise DimensionError(f"map expects {n_in} x {n_in} input, got {am.shape}")
    xv = np.asarray(x, dtype=complex).ravel()
    if xv.size != m_out:
        raise DimensionError(f"vector length {xv.size} does not match output dim {m_out}")
    if not np.all(np.isfinite(xv.real)) or not np.all(np.isfinite(xv.imag)):
        raise ValueError("vector entries must be finite")
    payload = serialize.jensen_map_payload(f, am, spec, xv, variant)

    w, _ = eig_hermitian(am)
    norm = float(np.linalg.norm(xv))
    t_id = applied_to_identity(spec)
    wi = np.linalg.eigvalsh(t_id)
    hyps = {
        "f convex on domain": f.flag("convex_on_J"),
        "spectrum within domain": _spectrum_in_domain(f, w),
    }
    if variant == "subunital":
        hyps["Phi(I) > 0"] = bool(wi[0] > OPERATOR_HYP_TOL * max(1.0, float(wi[-1])))
        hyps["Phi(I) <= I"] = bool(wi[-1] <= 1.0 + OPERATOR_HYP_TOL)
        hyps["0 in domain"] = f.flag("zero_in_J")
        hyps["f(0) <= 0"] = f.flag("f0_nonpositive")
        hyps["||x|| <= 1"] = norm <= 1.0 + _NORM_TOL
    else:
        hyps["Phi(I) = I"] = bool(
            frob(t_id - np.eye(m_out)) <= OPERATOR_HYP_TOL * math.sqrt(m_out)
        )
        hyps["||x|| = 1"] = abs(norm - 1.0) <= _NORM_TOL

    phi_a = hermitize(apply_map(spec, am))
    t = float(np.real(xv.conj() @ phi_a @ xv))
    t_scale = max(1.0, abs(t))
    hyps["evaluation point within domain"] = f.domain.contains(t, _DOMAIN_RTOL * t_scale)
    if not all(hyps.values()):
        return _na_report("jensen-map", hyps, payload, t0, tol, {"variant": variant})
    lhs = float(f(f.domain.clamp(t)))
    rhs = float(np.real(xv.conj() @ apply_map(spec, apply_fun(f, am)) @ xv))
    return _graded_report(
        "jensen-map",
        [lhs],
        [rhs],
        hyps,
        payload,
        t0,
        tol,
        {"variant": variant, "evaluation_point": t},
    )


# --- weak-majorization theorems ----------------------------------------------


def check_thm_weak_major(
    f: ConvexFunctionSpec, a, weighted_maps, tol: float | None = None
) -> CheckReport:
    """Top-k eigenvalue sums of f(sum_i a_i Phi_i(A)) vs sum_i a_i Phi_i(f(A)).

    The left side is weakly majorized by the right for convex f with 0 in
    the domain, f(0) <= 0, nonnegative combination weights, and
    0 <= sum_i a_i Phi_i(I) <= I. Both sides are compared through
    descending-cumulative sums; f's eigenvalues are sorted after applying f
    because f need not be monotone.
    """
    t0 = time.perf_counter()
    am = require_hermitian(a)
    pairs = [(float(alpha), spec) for alpha, spec in weighted_maps]
    if not pairs:
        raise DimensionError("expected at least one weighted map")
    n_in, m_out = map_dims(pairs[0][1])
    if am.shape[0] != n_in:
        raise DimensionError(f"maps expect {n_in} x {n_in} input, got {am.shape}")
    for _, spec in pairs:
        if map_dims(spec) != (n_in, m_out):
            raise DimensionError("all maps must share the same input/output dimensions")
    if not all(math.isfinite(alpha) for alpha, _ in pairs):
        raise ValueError("combination weights must be finite")
    payload = serialize.thm1_payload(f, am, pairs)

    w, _ = eig_hermitian(am)
    t_id = hermitize(sum(alpha * applied_to_identity(spec) for alpha, spec in pairs))
    wi = np.linalg.eigvalsh(t_id)
    hyps = {
        "weights nonnegative": all(alpha >= 0 for alpha, _ in pairs),
        "combined map subunital": bool(
            wi[0] >= -OPERATOR_HYP_TOL and wi[-1] <= 1.0 + OPERATOR_HYP_TOL
        ),
        "f convex on domain": f.flag("convex_on_J"),
        "0 in domain": f.flag("zero_in_J"),
        "f(0) <= 0": f.flag("f0_nonpositive"),
        "spectrum within domain": _spectrum_in_domain(f, w),
    }
    mixed = hermitize(sum(alpha * apply_map(spec, am) for alpha, spec in pairs))
    mu = np.linalg.eigvalsh(mixed)
    hyps["mixed spectrum within domain"] = _spectrum_in_domain(f, mu)
    if not all(hyps.values()):
        return _na_report("thm1", hyps, payload, t0, tol)

    lhs = np.cumsum(_descending(f(f.domain.clamp(mu))))
    fa = apply_fun(f, am)
    right = hermitize(sum(alpha * apply_map(spec, fa) for alpha, spec in pairs))
    rhs = np.cumsum(_descending(np.linalg.eigvalsh(right)))
    return _graded_report("thm1", lhs, rhs, hyps, payload, t0, tol)


def check_cor_congruence(
    f: ConvexFunctionSpec, a_list, x_list, alpha, tol: float | None = None
) -> CheckReport:
    """Congruence form with submultiplicative f.

    Compares top-k eigenvalue sums of f(sum_i X_i* A_i X_i) against those
    of sum_i a_i f(1/a_i) X_i* f(A_i) X_i, for positive weights a_i with
    sum_i a_i X_i* X_i <= I, and f convex and submultiplicative with
    f(0) <= 0. The domain must cover the spectra of every A_i and of the
    congruence sum, and every scalar 1/a_i.
    """
    t0 = time.perf_counter()
    mats = _hermitian_family(a_list)
    n = mats[0].shape[0]
    blocks = [require_square(x) for x in x_list]
    aw = _weights(alpha)
    if len(blocks) != len(mats) or aw.size != len(mats):
        raise DimensionError("A, X, and alpha must have matching lengths")
    for i, b in enumerate(blocks):
        if b.shape != (n, n):
            raise DimensionError(f"block {i} has shape {b.shape}, expected {(n, n)}")
    payload = serialize.cornew_payload(f, mats, blocks, aw)

    gram = hermitize(sum(b.conj().T @ b * w for w, b in zip(aw, blocks)))
    wg = np.linalg.eigvalsh(gram)
    mixed = hermitize(sum(b.conj().T @ m @ b for m, b in zip(mats, blocks)))
    mu = np.linalg.eigvalsh(mixed)
    spectra = np.concatenate([np.linalg.eigvalsh(m) for m in mats])
    hyps = {
        "weights positive": bool(np.all(aw > 0)),
        "sum a_i X_i*X_i <= I": bool(wg[-1] <= 1.0 + OPERATOR_HYP_TOL),
        "f convex on domain": f.flag("convex_on_J"),
        "f(0) <= 0": f.flag("f0_nonpositive"),
        "f submultiplicative": f.flag("submultiplicative"),
    }
    if np.all(aw > 0):
        points = np.concatenate([spectra, mu, 1.0 / aw])
        hyps["domain covers evaluation points"] = _spectrum_in_domain(f, points)
    else:
        hyps["domain covers evaluation points"] = False
    if not all(hyps.values()):
        return _na_report("cornew", hyps, payload, t0, tol)

    lhs = np.cumsum(_descending(f(f.domain.clamp(mu))))
    right = np.zeros((n, n), dtype=complex)
    for w, m, b in zip(aw, mats, blocks):
        right += w * float(f(f.domain.clamp(1.0 / w))) * (b.conj().T @ apply_fun(f, m) @ b)
    rhs = np.cumsum(_descending(np.linalg.eigvalsh(hermitize(right))))
    return _graded_report("cornew", lhs, rhs, hyps, payload, t0, tol)


def check_eigen_bohr(
    a_list,
    x_list,
    p,
    r,
    tol: float | None = None,
    rhs_scale: float = 1.0,
) -> CheckReport:
    """Eigenvalue Bohr inequality for congruence-compressed Hermitian families.

    Top-k eigenvalue sums of |sum_i X_i* A_i X_i|^r are compared against
    (sum_i p_i^(1/(1-r)))^(r-1) times those of sum_i p_i X_i* |A_i|^r X_i.
    Hypotheses: r > 1, p_i > 0, and
    sum_i p_i^(1/(1-r)) X_i* X_i <= (sum_i p_i^(1/(1-r))) I.

    ``rhs_scale`` multiplies the right-hand constant and exists only as a
    mutation hook for sensitivity testing; it is not part of the instance
    payload.
    """
    t0 = time.perf_counter()
    mats = _hermitian_family(a_list)
    n = mats[0].shape[0]
    blocks = [require_square(x) for x in x_list]
    pw = _weights(p)
    if len(blocks) != len(mats) or pw.size != len(mats):
        raise DimensionError("A, X, and p must have matching lengths")
    for i, b in enumerate(blocks):
        if b.shape != (n, n):
            raise DimensionError(f"block {i} has shape {b.shape}, expected {(n, n)}")
    r = float(r)
    rhs_scale = float(rhs_scale)
    if not math.isfinite(rhs_scale) or rhs_scale <= 0:
        raise ValueError("rhs_scale must be finite and positive")
    payload = serialize.cor45_payload(mats, blocks, pw, r)

    hyps = {"r > 1": r > 1.0, "weights positive": bool(np.all(pw > 0))}
    if all(hyps.values()):
        conj = pw ** (1.0 / (1.0 - r))
        total = float(np.sum(conj))
        gram = hermitize(sum(c * (b.conj().T @ b) for c, b in zip(conj, blocks)))
        wg = np.linalg.eigvalsh(gram)
        hyps["sum p_i^(1/(1-r)) X_i*X_i <= (sum p_i^(1/(1-r))) I"] = bool(
            wg[-1] <= total * (1.0 + OPERATOR_HYP_TOL)
        )
    else:
        hyps["sum p_i^(1/(1-r)) X_i*X_i <= (sum p_i^(1/(1-r))) I"] = False
    if not all(hyps.values()):
        return _na_report("cor45", hyps, payload, t0, tol)

    mixed = hermitize(sum(b.conj().T @ m @ b for m, b in zip(mats, blocks)))
    lhs = np.cumsum(_descending(np.abs(np.linalg.eigvalsh(mixed)) ** r))
    const = total ** (r - 1.0) * rhs_scale
    right = hermitize(sum(w * (b.conj().T @ abs_power(m, r) @ b) for w, m, b in zip(pw, mats, blocks)))
    rhs = const * np.cumsum(_descending(np.linalg.eigvalsh(right)))
    extras = {"constant": const}
    if rhs_scale != 1.0:
        extras["rhs_scale"] = rhs_scale
    return _graded_report("cor45", lhs, rhs, hyps, payload, t0, tol, extras)


def check_norm_bohr(a_list, p, r, tol: float | None = None) -> CheckReport:
    """Ky Fan certificate for the norm Bohr inequality, 1 < r <= 2.

    For Hermitian A_i and weights p_i in (0, 1] summing to 1, the singular
    values of |sum_i A_i|^r are weakly majorized by the eigenvalues of
    sum_i p_i^(1-r) |A_i|^r; by Ky Fan dominance this certifies the
    inequality in every unitarily invariant norm at once. extras carries a
    Schatten cross-check at orders {1, 1.5, 2, 3, 10}.
    """
    t0 = time.perf_counter()
    mats = _hermitian_family(a_list)
    pw = _weights(p)
    if pw.size != len(mats):
        raise DimensionError(f"{len(mats)} matrices but {pw.size} weights")
    r = float(r)
    payload = serialize.zh_payload(mats, pw, r)
    hyps = {"1 < r <= 2": 1.0 < r <= 2.0 + _NORM_TOL}
    hyps.update(_sum_weight_hyps(pw))
    if not all(hyps.values()):
        return _na_report("zh", hyps, payload, t0, tol)

    total = hermitize(sum(mats))
    left_mat = abs_power(total, r)
    lhs = np.cumsum(_descending(np.linalg.eigvalsh(left_mat)))
    right_mat = hermitize(
        sum(w ** (1.0 - r) * abs_power(m, r) for w, m in zip(pw, mats))
    )
    rhs = np.cumsum(_descending(np.linalg.eigvalsh(right_mat)))

    schatten = {}
    schatten_ok = True
    for order in (1.0, 1.5, 2.0, 3.0, 10.0):
        ln = _schatten_of_psd(left_mat, order)
        rn = _schatten_of_psd(right_mat, order)
        schatten[f"{order:g}"] = [ln, rn]
        if ln > rn + DEFAULT_RTOL * max(1.0, ln, rn):
            schatten_ok = False
    extras = {"schatten_orders": schatten, "schatten_ok": schatten_ok}
    return _graded_report("zh", lhs, rhs, hyps, payload, t0, tol, extras)


def _schatten_of_psd(mat: np.ndarray, order: float) -> float:
    w = np.clip(np.linalg.eigvalsh(mat), 0.0, None)
    top = float(w[-1])
    if top == 0.0:
        return 0.0
    return top * float(np.sum((w / top) ** order)) ** (1.0 / order)


def check_pointwise_bohr_r2(a_list, p, r, tol: float | None = None) -> CheckReport:
    """Per-index Bohr inequality for r >= 2 and arbitrary square A_i.

    Compares s_j(sum_i A_i)^r (equivalently the descending eigenvalues of
    |sum_i A_i|^r) against the descending eigenvalues of
    sum_i p_i^(1-r) |A_i|^r, index by index, for weights p_i in (0, 1]
    summing to 1; p_i^(1-r) = 1/p_i^(r-1) >= 1. The comparison is
    pointwise, strictly stronger than its partial-sum consequence.
    """
    t0 = time.perf_counter()
    mats = _square_family(a_list)
    pw = _weights(p)
    if pw.size != len(mats):
        raise DimensionError(f"{len(mats)} matrices but {pw.size} weights")
    r = float(r)
    payload = serialize.prop_r2_payload(mats, pw, r)
    hyps = {"r >= 2": r >= 2.0 - _NORM_TOL}
    hyps.update(_sum_weight_hyps(pw))
    if not all(hyps.values()):
        return _na_report("prop-r2", hyps, payload, t0, tol)

    total = sum(mats)
    lhs = singular_values(total) ** r
    right = hermitize(sum(w ** (1.0 - r) * abs_power(m, r) for w, m in zip(pw, mats)))
    rhs = _descending(np.linalg.eigvalsh(right))
    return _graded_report(
        "prop-r2", lhs, rhs, hyps, payload, t0, tol, comparison="pointwise"
    )


def check_sum_square(a_list, p, tol: float | None = None) -> CheckReport:
    """PSD certificate behind the r = 2 case.

    With S = sum_{i,j} p_i p_j (A_i - A_j)*(A_i - A_j) and
    D = sum_j p_j |A_j|^2 - |sum_j p_j A_j|^2, checks that S and D are PSD
    and that D = S/2 holds as an identity within 1e-11 of scale. Report
    rows: (-min eig S, -min eig D, residual/budget) vs (0, 0, 1); the
    third row is normalized so the identity is enforced at its own budget
    rather than the looser slack tolerance. Weights must be positive and
    sum to 1.
    """
    t0 = time.perf_counter()
    mats = _square_family(a_list)
    pw = _weights(p)
    if pw.size != len(mats):
        raise DimensionError(f"{len(mats)} matrices but {pw.size} weights")
    payload = serialize.sumsq_payload(mats, pw)
    hyps = {"weights positive": bool(np.all(pw > 0))}
    hyps["weights sum to 1"] = bool(abs(float(np.sum(pw)) - 1.0) <= WEIGHT_SUM_TOL)
    if not all(hyps.values()):
        return _na_report("sumsq", hyps, payload, t0, tol)

    n = mats[0].shape[0]
    spread = np.zeros((n, n), dtype=complex)
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            diff = mats[i] - mats[j]
            spread += 2.0 * pw[i] * pw[j] * (diff.conj().T @ diff)
    spread = hermitize(spread)
    mean = sum(w * m for w, m in zip(pw, mats))
    dispersion = hermitize(
        sum(w * (m.conj().T @ m) for w, m in zip(pw, mats)) - mean.conj().T @ mean
    )
    min_spread = float(np.linalg.eigvalsh(spread)[0])
    min_disp = float(np.linalg.eigvalsh(dispersion)[0])
    residual = frob(dispersion - 0.5 * spread)
    budget = 1e-11 * max(1.0, frob(dispersion), 0.5 * frob(spread))
    lhs = [-min_spread, -min_disp, residual / budget]
    rhs = [0.0, 0.0, 1.0]
    extras = {
        "spread_min_eigenvalue": min_spread,
        "dispersion_min_eigenvalue": min_disp,
        "identity_residual": residual,
        "identity_budget": budget,
    }
    return _graded_report(
        "sumsq", lhs, rhs, hyps, payload, t0, tol, extras, comparison="certificate"
    )


def check_increasing_convex_eigen(
    f: ConvexFunctionSpec, a_list, p, tol: float | None = None
) -> CheckReport:
    """Per-index f(lambda_j(sum p_i A_i)) <= lambda_j(sum p_i f(A_i)).

    Holds for increasing convex f on a domain containing every spectrum,
    with weights in [0, 1] summing to 1. Monotonicity is what upgrades the
    weak-majorization statement to a pointwise one.
    """
    t0 = time.perf_counter()
    mats = _hermitian_family(a_list)
    pw = _weights(p)
    if pw.size != len(mats):
        raise DimensionError(f"{len(mats)} matrices but {pw.size} weights")
    payload = serialize.inc_convex_payload(f, mats, pw)
    spectra = np.concatenate([np.linalg.eigvalsh(m) for m in mats])
    hyps = {
        "f convex on domain": f.flag("convex_on_J"),
        "f increasing on domain": f.flag("increasing"),
        "spectra within domain": _spectrum_in_domain(f, spectra),
    }
    hyps.update(_sum_weight_hyps(pw))
    if not all(hyps.values()):
        return _na_report("inc-convex", hyps, payload, t0, tol)

    mixture = hermitize(sum(w * m for w, m in zip(pw, mats)))
    mu = np.linalg.eigvalsh(mixture)
    hyps["mixture spectrum within domain"] = _spectrum_in_domain(f, mu)
    if not all(hyps.values()):
        return _na_report("inc-convex", hyps, payload, t0, tol)
    lhs = _descending(f(f.domain.clamp(mu)))
    right = hermitize(sum(w * apply_fun(f, m) for w, m in zip(pw, mats)))
    rhs = _descending(np.linalg.eigvalsh(right))
    return _graded_report(
        "inc-convex", lhs, rhs, hyps, payload, t0, tol, comparison="pointwise"
    )
