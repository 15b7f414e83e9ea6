"""Positive and completely positive maps: Choi, Kraus, Stinespring, normalization."""

import numpy as np
import pytest

from bohrcheck.cpmaps import (
    BlockExtraction,
    Congruence,
    DiagonalPOVM,
    SpecError,
    Transpose,
    WeightedSum,
    applied_to_identity,
    apply_map,
    choi_matrix,
    is_completely_positive,
    is_subunital,
    is_unital,
    kraus_from_choi,
    kraus_operators,
    map_dims,
    normalize_unital,
    stinespring,
)
from bohrcheck.linalg import (
    DimensionError,
    complex_gaussian,
    frob,
    hermitize,
    make_rng,
    random_hermitian,
    random_unitary,
)
from oracles import choi_via_kron, cp_by_lifted_positivity, entangled_projector, lifted_apply


def random_leaf(rng, n, m):
    """One structural leaf spec on input dim n, output dim m; CP by construction."""
    kind = int(rng.integers(3))
    if kind == 0:
        return Congruence(complex_gaussian((n, m), rng) / np.sqrt(n))
    if kind == 1:
        effects = []
        for _ in range(n):
            g = complex_gaussian((m, m), rng)
            effects.append(g @ g.conj().T / (n * m))
        return DiagonalPOVM(tuple(effects))
    splits = [b for b in range(1, n + 1) if n % b == 0]
    b = int(rng.choice(splits))
    return BlockExtraction(
        int(rng.integers(b)), b, complex_gaussian((n // b, m), rng) / np.sqrt(n // b)
    )


def random_structural(rng, n, m):
    if rng.uniform() < 0.3:
        terms = tuple(
            (float(rng.uniform(0.2, 1.0)), random_leaf(rng, n, m)) for _ in range(2)
        )
        return WeightedSum(terms)
    return random_leaf(rng, n, m)


# --- spec construction and application ----------------------------------------


def test_map_dims_per_kind():
    assert map_dims(Congruence(np.zeros((3, 2)))) == (3, 2)
    assert map_dims(DiagonalPOVM((np.eye(4), np.eye(4), np.eye(4)))) == (3, 4)
    assert map_dims(BlockExtraction(1, 3, np.zeros((2, 5)))) == (6, 5)
    assert map_dims(Transpose(4)) == (4, 4)
    ws = WeightedSum(((1.0, Congruence(np.zeros((3, 2)))),))
    assert map_dims(ws) == (3, 2)


def test_congruence_identity_and_scaling():
    a = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=complex)
    assert np.allclose(apply_map(Congruence(np.eye(2)), a), a)
    assert np.allclose(apply_map(Congruence(2.0 * np.eye(2)), np.eye(2)), 4.0 * np.eye(2))


def test_povm_on_diagonal_input_with_eii_effects():
    effects = tuple(np.outer(e, e).astype(complex) for e in np.eye(3))
    spec = DiagonalPOVM(effects)
    a = np.diag([1.0, 2.0, 3.0]).astype(complex)
    assert np.allclose(apply_map(spec, a), a, atol=1e-13)


def test_povm_rejects_non_psd_effect():
    with pytest.raises(SpecError):
        DiagonalPOVM((np.diag([1.0, -0.5]),))


def test_block_extraction_picks_the_right_block():
    x = np.eye(2, dtype=complex)
    spec = BlockExtraction(1, 2, x)
    a = np.zeros((4, 4), dtype=complex)
    a[2:, 2:] = np.array([[5.0, 1.0], [1.0, 7.0]])
    assert np.allclose(apply_map(spec, a), a[2:, 2:])
    with pytest.raises(SpecError):
        BlockExtraction(2, 2, x)


def test_weighted_sum_linearity_and_dim_checks():
    c1 = Congruence(np.eye(2))
    c2 = Congruence(2.0 * np.eye(2))
    ws = WeightedSum(((0.5, c1), (0.25, c2)))
    a = random_hermitian(2, (-1, 1), make_rng(50))
    want = 0.5 * apply_map(c1, a) + 0.25 * apply_map(c2, a)
    assert np.allclose(apply_map(ws, a), want)
    with pytest.raises(SpecError):
        WeightedSum(((1.0, c1), (1.0, Congruence(np.eye(3)))))
    with pytest.raises(SpecError):
        WeightedSum(((-0.5, c1),))


def test_apply_map_dimension_mismatch():
    with pytest.raises(DimensionError):
        apply_map(Congruence(np.eye(2)), np.eye(3))


def test_apply_map_preserves_positivity():
    rng = make_rng(51)
    for _ in range(200):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        spec = random_structural(rng, n, m)
        g = complex_gaussian((n, n), rng)
        psd = g @ g.conj().T
        out = apply_map(spec, psd)
        w = np.linalg.eigvalsh(hermitize(out))
        assert w[0] >= -1e-9 * max(1.0, w[-1])


def test_transpose_application():
    a = np.array([[1.0, 2.0j], [0.0, 3.0]], dtype=complex)
    assert np.allclose(apply_map(Transpose(2), a), a.T)


# --- unitality ------------------------------------------------------------------


def test_unitality_predicates():
    assert is_unital(Congruence(np.eye(3)))
    assert is_unital(Transpose(3))
    half = Congruence(np.sqrt(0.5) * np.eye(3))
    assert not is_unital(half)
    assert is_subunital(half)
    big = Congruence(2.0 * np.eye(3))
    assert not is_subunital(big)
    assert np.allclose(applied_to_identity(big), 4.0 * np.eye(3))


# --- Choi matrices -----------------------------------------------------------------


def test_choi_identity_map_eigenvalues():
    c = choi_matrix(Congruence(np.eye(2)))
    assert np.allclose(np.linalg.eigvalsh(c), [0.0, 0.0, 0.0, 2.0], atol=1e-12)


def test_choi_transpose_is_swap():
    c = choi_matrix(Transpose(2))
    swap = np.zeros((4, 4))
    swap[0, 0] = swap[3, 3] = swap[1, 2] = swap[2, 1] = 1.0
    assert np.allclose(c, swap, atol=1e-13)
    assert np.allclose(np.linalg.eigvalsh(c), [-1.0, 1.0, 1.0, 1.0], atol=1e-12)


def test_choi_of_normalized_trace_map():
    n = 3
    spec = DiagonalPOVM(tuple(np.eye(n, dtype=complex) / n for _ in range(n)))
    c = choi_matrix(spec)
    assert np.allclose(c, np.eye(n * n) / n, atol=1e-13)


def test_choi_matches_kron_oracle():
    rng = make_rng(52)
    for _ in range(60):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        spec = random_structural(rng, n, m)
        assert frob(choi_matrix(spec) - choi_via_kron(spec)) <= 1e-12


def test_choi_linearity_over_weighted_sums():
    rng = make_rng(53)
    for _ in range(30):
        n, m = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        s1 = random_leaf(rng, n, m)
        s2 = random_leaf(rng, n, m)
        a1, a2 = float(rng.uniform(0, 2)), float(rng.uniform(0, 2))
        combined = choi_matrix(WeightedSum(((a1, s1), (a2, s2))))
        assert frob(combined - a1 * choi_matrix(s1) - a2 * choi_matrix(s2)) <= 1e-11


def test_choi_equals_lifted_map_on_entangled_projector():
    rng = make_rng(54)
    for _ in range(20):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        spec = random_structural(rng, n, m)
        assert frob(lifted_apply(spec, entangled_projector(n)) - choi_matrix(spec)) <= 1e-12


# --- complete positivity ----------------------------------------------------------


def test_structural_kinds_are_cp():
    rng = make_rng(55)
    for _ in range(100):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        assert is_completely_positive(random_structural(rng, n, m))


def test_transpose_is_not_cp():
    assert not is_completely_positive(Transpose(2))
    assert not is_completely_positive(Transpose(4))


def test_is_cp_agrees_with_lifted_positivity_oracle():
    rng = make_rng(56)
    for trial in range(200):
        n = int(rng.integers(2, 4))
        m = int(rng.integers(2, 4))
        if trial % 4 == 0:
            # Mix a non-CP transpose into an otherwise structural sum; the
            # verdict is genuinely data-dependent.
            spec = WeightedSum(
                (
                    (float(rng.uniform(0.1, 1.0)), random_leaf(rng, n, n)),
                    (float(rng.uniform(0.1, 1.0)), Transpose(n)),
                )
            )
        else:
            spec = random_structural(rng, n, m)
        assert is_completely_positive(spec) == cp_by_lifted_positivity(spec, rng)


# --- Kraus extraction ----------------------------------------------------------------


def test_kraus_identity_map_single_operator():
    ops = kraus_operators(Congruence(np.eye(2)))
    assert len(ops) == 1
    k = ops[0]
    phase = k[0, 0] / abs(k[0, 0])
    assert np.allclose(k / phase, np.eye(2), atol=1e-12)


def test_kraus_unitary_conjugation_single_operator():
    u = random_unitary(3, make_rng(57))
    ops = kraus_operators(Congruence(u))
    assert len(ops) == 1
    ratio = ops[0] / u
    assert np.allclose(ratio, ratio[0, 0] * np.ones((3, 3)), atol=1e-11)
    assert abs(abs(ratio[0, 0]) - 1.0) <= 1e-11


def test_kraus_count_equals_choi_rank():
    rng = make_rng(58)
    for _ in range(30):
        n, m = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        spec = random_structural(rng, n, m)
        c = choi_matrix(spec)
        w = np.linalg.eigvalsh(hermitize(c))
        rank = int(np.sum(w > 1e-10 * max(w[-1], 0.0)))
        assert len(kraus_operators(spec)) == rank


def test_kraus_reconstruction_round_trip():
    rng = make_rng(59)
    for _ in range(200):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        spec = random_structural(rng, n, m)
        ops = kraus_operators(spec)
        for _ in range(3):
            a = random_hermitian(n, (-2.0, 2.0), rng)
            direct = apply_map(spec, a)
            via = sum(k.conj().T @ a @ k for k in ops)
            assert frob(direct - via) <= 1e-9 * max(1.0, frob(direct))


def test_kraus_from_choi_rejects_non_psd():
    with pytest.raises(SpecError):
        kraus_from_choi(choi_matrix(Transpose(2)), 2, 2)
    with pytest.raises(DimensionError):
        kraus_from_choi(np.eye(4), 3, 2)


# --- Stinespring dilation ---------------------------------------------------------------


def test_stinespring_identity_map():
    dil = stinespring(Congruence(np.eye(3)))
    assert dil.block_count == 1
    assert dil.recon_residual <= 1e-12
    phase = dil.isometry[0, 0] / abs(dil.isometry[0, 0])
    assert np.allclose(dil.isometry / phase, np.eye(3), atol=1e-12)


def test_stinespring_two_kraus_mixture():
    u = random_unitary(3, make_rng(60))
    spec = WeightedSum(((0.5, Congruence(np.eye(3))), (0.5, Congruence(u))))
    dil = stinespring(spec)
    assert dil.block_count == 2
    assert frob(dil.isometry.conj().T @ dil.isometry - np.eye(3)) <= 1e-10


def test_stinespring_unital_povm_isometry():
    effects = tuple(np.outer(e, e).astype(complex) for e in np.eye(3))
    dil = stinespring(DiagonalPOVM(effects))
    assert frob(dil.isometry.conj().T @ dil.isometry - np.eye(3)) <= 1e-10


def test_stinespring_represent_matches_apply():
    rng = make_rng(61)
    for _ in range(30):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        spec = random_structural(rng, n, m)
        dil = stinespring(spec)
        a = random_hermitian(n, (-2.0, 2.0), rng)
        assert frob(dil.represent(a) - apply_map(spec, a)) <= 1e-9 * max(
            1.0, frob(apply_map(spec, a))
        )


def test_stinespring_rejects_transpose():
    with pytest.raises(SpecError):
        stinespring(Transpose(3))


# --- unital normalization ---------------------------------------------------------------


def test_normalize_unital_fast_path_returns_same_object():
    spec = Congruence(np.eye(3))
    assert normalize_unital(spec) is spec
    tr = Transpose(3)
    assert normalize_unital(tr) is tr


def test_normalize_unital_congruence():
    rng = make_rng(62)
    for _ in range(30):
        n = int(rng.integers(2, 5))
        x = complex_gaussian((n, n), rng) + 2.0 * np.eye(n)  # keep X*X well conditioned
        psi = normalize_unital(Congruence(x))
        assert frob(applied_to_identity(psi) - np.eye(n)) <= 1e-10 * np.sqrt(n)


def test_normalize_unital_matches_explicit_conjugation():
    rng = make_rng(63)
    for _ in range(30):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        spec = random_structural(rng, n, m)
        t = applied_to_identity(spec)
        w, u = np.linalg.eigh(t)
        if w[0] <= 1e-6 * w[-1]:
            continue
        s = (u * w**-0.5) @ u.conj().T
        psi = normalize_unital(spec)
        a = random_hermitian(n, (-2.0, 2.0), rng)
        want = s @ apply_map(spec, a) @ s
        assert frob(apply_map(psi, a) - want) <= 1e-9 * max(1.0, frob(want))


def test_normalize_unital_rejects_singular_phi_of_identity():
    x = np.zeros((2, 2), dtype=complex)
    x[0, 0] = 1.0  # X*X = diag(1, 0), singular
    with pytest.raises(SpecError):
        normalize_unital(Congruence(x))


def test_normalize_unital_rejects_nonunital_transpose_composition():
    # A scaled transpose is not unital and its conjugation cannot be pushed
    # into leaves of a non-structural kind.
    spec = WeightedSum(((0.5, Transpose(3)),))
    with pytest.raises(SpecError):
        normalize_unital(spec)
