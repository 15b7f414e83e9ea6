"""Core linear algebra: intervals, seeded streams, eigensolver, samplers."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrcheck.linalg import (
    DimensionError,
    Interval,
    abs_matrix,
    as_complex_matrix,
    as_interval,
    complex_gaussian,
    eig_hermitian,
    eigvals_descending,
    frob,
    hermiticity_defect,
    hermitize,
    make_rng,
    mix64,
    random_hermitian,
    random_map_family,
    random_unitary,
    require_hermitian,
    require_square,
    stream_key,
)
from oracles import splitmix64_ref

PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])


# --- intervals ---------------------------------------------------------------


def test_interval_validate_rejects_empty_and_nonfinite():
    with pytest.raises(ValueError):
        Interval(2.0, 1.0).validate()
    with pytest.raises(ValueError):
        Interval(0.0, float("inf")).validate()
    assert Interval(1.0, 1.0).validate().width == 0.0


def test_interval_contains_and_clamp():
    iv = as_interval((-1.0, 2.0))
    assert iv.contains([0.0, 2.0, -1.0])
    assert not iv.contains(2.1)
    assert iv.contains(2.1, tol=0.2)
    assert np.allclose(iv.clamp([-5.0, 0.5, 7.0]), [-1.0, 0.5, 2.0])


# --- seeded streams ----------------------------------------------------------


def test_mix64_matches_reference_finalizer():
    for x in (0, 1, 42, 2**63, 2**64 - 1, 0xDEADBEEF):
        assert mix64(x) == splitmix64_ref(x)


def test_stream_keys_distinct_across_trials():
    keys = {stream_key(7, t) for t in range(1000)}
    assert len(keys) == 1000


def test_make_rng_reproducible_and_stream_separated():
    a = make_rng(7, 3).standard_normal(8)
    b = make_rng(7, 3).standard_normal(8)
    c = make_rng(7, 4).standard_normal(8)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


# --- constructors and validation ----------------------------------------------


def test_as_complex_matrix_rejects_bad_inputs():
    with pytest.raises(DimensionError):
        as_complex_matrix([1.0, 2.0])
    with pytest.raises(ValueError):
        as_complex_matrix([[np.nan, 0.0], [0.0, 1.0]])
    with pytest.raises(DimensionError):
        as_complex_matrix(np.zeros((0, 0)))


def test_require_square_and_hermitian():
    with pytest.raises(DimensionError):
        require_square(np.zeros((2, 3)))
    a = np.array([[1.0, 2.0 + 1j], [2.0 - 1j, 0.0]])
    assert np.allclose(require_hermitian(a), a)
    with pytest.raises(ValueError):
        require_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_require_hermitian_tolerates_roundoff_asymmetry():
    a = np.array([[1.0, 0.5], [0.5 + 1e-14, 2.0]])
    out = require_hermitian(a)
    assert hermiticity_defect(out) <= 1e-12


def test_hermitize_halves_the_defect():
    a = np.array([[1.0, 1.0], [0.0, 1.0]])
    h = hermitize(a)
    assert np.allclose(h, np.array([[1.0, 0.5], [0.5, 1.0]]))


# --- eigensolver ---------------------------------------------------------------


def test_eig_hermitian_identity():
    w, _ = eig_hermitian(np.eye(2))
    assert np.allclose(w, [1.0, 1.0])


def test_eig_hermitian_analytic_2x2():
    w, _ = eig_hermitian(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.allclose(w, [3.0, 1.0], atol=1e-12)


def test_eig_hermitian_pauli_y():
    w, v = eig_hermitian(PAULI_Y)
    assert np.allclose(w, [1.0, -1.0], atol=1e-12)
    assert np.allclose(v.conj().T @ v, np.eye(2), atol=1e-12)


def test_eig_hermitian_reconstruction_and_descending_order():
    rng = make_rng(101)
    for _ in range(200):
        n = int(rng.integers(1, 13))
        a = random_hermitian(n, (-4.0, 4.0), rng)
        w, v = eig_hermitian(a)
        assert np.all(np.diff(w) <= 0)
        recon = v @ np.diag(w) @ v.conj().T
        assert frob(a - recon) <= 1e-11 * max(1.0, frob(a))
        assert frob(v.conj().T @ v - np.eye(n)) <= 1e-11


def test_eig_hermitian_trace_preservation():
    rng = make_rng(102)
    for _ in range(100):
        a = random_hermitian(int(rng.integers(2, 9)), (-3.0, 3.0), rng)
        w = eigvals_descending(a)
        tr = float(np.real(np.trace(a)))
        assert abs(float(np.sum(w)) - tr) <= 1e-10 * max(1.0, abs(tr))


def test_eig_hermitian_rejects_non_hermitian():
    with pytest.raises(ValueError):
        eig_hermitian(np.array([[0.0, 1.0], [0.5, 0.0]]))


def test_weyl_monotonicity_under_psd_bump():
    rng = make_rng(103)
    for _ in range(100):
        n = int(rng.integers(2, 7))
        a = random_hermitian(n, (-3.0, 3.0), rng)
        g = complex_gaussian((n, n), rng)
        p = g @ g.conj().T
        wa = eigvals_descending(a)
        wb = eigvals_descending(a + p)
        assert np.all(wa <= wb + 1e-10)


# --- matrix absolute value -----------------------------------------------------


def test_abs_matrix_diagonal():
    assert np.allclose(abs_matrix(np.diag([-3.0, 2.0])), np.diag([3.0, 2.0]), atol=1e-12)


def test_abs_matrix_nilpotent():
    assert np.allclose(abs_matrix(np.array([[0.0, 1.0], [0.0, 0.0]])), np.diag([0.0, 1.0]), atol=1e-12)


def test_abs_matrix_golden_ratio_eigenvalues():
    # |A| for the unipotent shear has the golden ratio and its inverse as
    # eigenvalues: A*A = [[1,1],[1,2]] has eigenvalues phi^2 and phi^-2.
    phi = (1.0 + np.sqrt(5.0)) / 2.0
    w = eigvals_descending(abs_matrix(np.array([[1.0, 1.0], [0.0, 1.0]])))
    assert np.allclose(w, [phi, 1.0 / phi], atol=1e-12)


def test_abs_matrix_psd_square_law_and_frobenius_identity():
    rng = make_rng(104)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        a = complex_gaussian((n, n), rng)
        m = abs_matrix(a)
        assert float(np.linalg.eigvalsh(m)[0]) >= -1e-11
        assert frob(m @ m - a.conj().T @ a) <= 1e-10 * max(1.0, frob(a) ** 2)
        assert abs(frob(m) - frob(a)) <= 1e-10 * max(1.0, frob(a))


# --- random samplers -------------------------------------------------------------


def test_random_unitary_scalar_case():
    u = random_unitary(1, make_rng(5))
    assert abs(abs(u[0, 0]) - 1.0) <= 1e-12


def test_random_unitary_deterministic_and_unitary():
    u1 = random_unitary(4, make_rng(7))
    u2 = random_unitary(4, make_rng(7))
    assert np.array_equal(u1, u2)
    assert frob(u1.conj().T @ u1 - np.eye(4)) <= 1e-12
    assert abs(abs(np.linalg.det(u1)) - 1.0) <= 1e-10


def test_random_hermitian_degenerate_intervals():
    rng = make_rng(8)
    assert np.allclose(random_hermitian(3, (0.0, 0.0), rng), np.zeros((3, 3)), atol=1e-14)
    c = random_hermitian(3, (2.5, 2.5), rng)
    assert np.allclose(c, 2.5 * np.eye(3), atol=1e-13)


def test_random_hermitian_spectrum_inside_interval():
    rng = make_rng(9)
    for _ in range(50):
        a = random_hermitian(5, (-1.0, 2.0), rng)
        w = eigvals_descending(a)
        assert np.all(w >= -1.0 - 1e-10) and np.all(w <= 2.0 + 1e-10)
        assert hermiticity_defect(a) <= 1e-13


def test_random_map_family_respects_constraint():
    rng = make_rng(10)
    for _ in range(50):
        ell = int(rng.integers(1, 5))
        n = int(rng.integers(1, 6))
        m = int(rng.integers(1, 6))
        w = rng.uniform(0.1, 2.0, ell)
        xs = random_map_family(ell, n, m, w, rng)
        gram = sum(wi * (x.conj().T @ x) for wi, x in zip(w, xs))
        top = float(np.linalg.eigvalsh(hermitize(gram))[-1])
        assert top <= 1.0 + 1e-12


def test_random_map_family_zero_weights_unscaled():
    rng = make_rng(11)
    xs = random_map_family(2, 3, 3, [0.0, 0.0], rng)
    assert len(xs) == 2
    # Unscaled Ginibre blocks have Frobenius norm around n, far above the
    # contractive regime, so the vacuous constraint is observable.
    assert max(frob(x) for x in xs) > 1.0


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2**64 - 1))
def test_mix64_matches_reference_everywhere(x):
    assert mix64(x) == splitmix64_ref(x)
