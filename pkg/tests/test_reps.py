import cmath

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qball.algebra.poly import MATQ, NCPolynomial, z, zs
from qball.algebra.relations import boundary_ideal_generators
from qball.rep.fock import FockRepresentation
from qball.rep.operators import SparseTensorOperator, TruncationConfig, factor_product_matrix, leak_free_indices
from qball.rep.reps import (
    BoundaryRepresentation,
    CoherentRepresentation,
    boundary_rep,
    character_chi,
    character_direct,
    character_via_paths,
    coherent_rep,
    coherent_word,
    dilation_compression_check,
    finite_dilation,
    is_reduced,
    isometry_defects,
    longest_word,
    phi_grid,
    reconstruct_z11,
    split_A_B,
)
from qball.verify.sampling import sample_polynomial

CFG = TruncationConfig(0.5, 6)


def g(s, n=2):
    return NCPolynomial.gen(s, n)


# characters ---------------------------------------------------------------

def test_character_values():
    phis = [0.3, 1.1]
    assert character_direct(phis, g(z(1, 2)), 0.5) == 0
    assert character_direct(phis, g(z(2, 2)), 0.5) == pytest.approx(cmath.exp(1.1j))
    assert character_direct(phis, g(z(1, 1)), 0.5) == pytest.approx(cmath.exp(0.3j) / 0.5)


@given(st.integers(0, 10 ** 6), st.integers(1, 3), st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi))
def test_characters_agree(seed, n, a, b):
    phis = [a, b, a + b][:n]
    cfg = TruncationConfig(0.5, 3)
    p = sample_polynomial(seed, n, 2)
    d = character_chi(phis, p, cfg, "direct")
    assert character_chi(phis, p, cfg, "paths") == pytest.approx(d, abs=1e-12)


def test_character_method_checked():
    with pytest.raises(ValueError):
        character_chi([0.0], g(z(1, 1), 1), CFG, "other")


# coherent ---------------------------------------------------------------------

def test_coherent_n1_is_a_scalar():
    C = CoherentRepresentation(1, 0.8, CFG)
    assert C.letter(z(1, 1)).slots == 0
    assert C.letter(z(1, 1)).as_scalar() == pytest.approx(cmath.exp(0.8j))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_coherent_vector(n):
    cfg = TruncationConfig(0.5, 3)
    psi = 2.0
    C = CoherentRepresentation(n, psi, cfg)
    omega = np.zeros((3,) * (n * n - 1), dtype=complex)
    omega[(0,) * (n * n - 1)] = 1
    lam = (-1) ** (n - 1) * cmath.exp(1j * psi)
    assert np.array_equal(C.letter(z(1, 1)).apply(omega, cfg), lam * omega)
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            if (j, k) != (1, 1):
                assert not np.any(C.letter(zs(k, j)).apply(omega, cfg))


def test_split_n1():
    parts = split_A_B(1, CFG)
    assert parts["B"].slots == 0 and parts["B"].as_scalar() == 1
    assert parts[("A", 1, 1)].is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_split_reconstructs_exactly(n):
    cfg = TruncationConfig(0.5, 4)
    parts = split_A_B(n, cfg)
    assert reconstruct_z11(parts, n).allclose(FockRepresentation(n, cfg).letter(z(1, 1)))
    for (key, op) in parts.items():
        if key != "B" and key[1:] != (1, 1):
            assert op.allclose(FockRepresentation(n, cfg).letter(z(key[2], key[1])).evaluate_slot(n, 0.0))


def test_coherent_z11_is_phase_times_b_plus_a():
    psi = 1.3
    parts = split_A_B(2, CFG)
    want = parts["B"].scale(cmath.exp(1j * psi)) + parts[("A", 1, 1)]
    assert coherent_rep(psi, g(z(1, 1)), CFG).allclose(want, atol=1e-15)


# boundary -----------------------------------------------------------------------

def test_words():
    assert longest_word(3) == (2, 1, 2) or longest_word(3) == (1, 2, 1)
    assert coherent_word(3) == (2, 1)
    assert is_reduced((1,), 2) and not is_reduced((1, 1), 2)
    with pytest.raises(ValueError):
        BoundaryRepresentation(2, [0, 0], (1, 1), CFG)
    with pytest.raises(ValueError):
        BoundaryRepresentation(2, [0, 0], (2,), CFG)


def test_boundary_n1_is_the_phase():
    op = boundary_rep([0.4], (), g(z(1, 1), 1), CFG)
    assert op.as_scalar() == pytest.approx(cmath.exp(0.4j))


@pytest.mark.parametrize("word,reduced", [((), True), ((1,), True), ((1, 1), False)])
def test_boundary_ideal_vanishes_n2(word, reduced):
    cfg = TruncationConfig(0.5, 8)
    idx = leak_free_indices(len(word), cfg.safe_degree - 2)
    for phis in phi_grid(2, 4):
        B = BoundaryRepresentation(2, phis, word, cfg, check_reduced=reduced)
        for gen in boundary_ideal_generators(2):
            op = B.operator(gen)
            val = abs(op.as_scalar()) if not word else op.column_norms(idx).max()
            assert val <= 1e-12
        for d in isometry_defects(B).values():
            val = abs(d.as_scalar()) if not word else d.column_norms(idx).max()
            assert val <= 1e-12


def test_boundary_ideal_vanishes_n3():
    cfg = TruncationConfig(0.5, 4)
    word = longest_word(3)
    idx = leak_free_indices(3, cfg.safe_degree - 2)
    B = BoundaryRepresentation(3, [0.1, 0.2, 0.3], word, cfg)
    for gen in boundary_ideal_generators(3):
        assert B.operator(gen).column_norms(idx).max() <= 1e-12


def test_boundary_ideal_is_not_zero_in_fock():
    cfg = TruncationConfig(0.5, 6)
    op = FockRepresentation(2, cfg).operator(boundary_ideal_generators(2)[0])
    assert op.column_norms(np.zeros((1, 4), dtype=int))[0] > 0.5


# dilation ------------------------------------------------------------------------

def test_dilation_of_weighted_shift():
    T = factor_product_matrix(("CqS",), TruncationConfig(0.5, 8))
    U, rep = finite_dilation(T, 4)
    assert rep.passed
    assert np.abs(U.conj().T @ U - np.eye(U.shape[0])).max() < 1e-12


def test_dilation_of_unitary_and_zero():
    T = np.diag(np.exp(1j * np.arange(3)))
    U, rep = finite_dilation(T, 3)
    assert all(c.residual <= 1e-15 for c in rep.checks)
    U, rep = finite_dilation(np.zeros((2, 2)), 2)
    assert np.abs((U @ U)[:2, :2]).max() == 0
    with pytest.raises(ValueError):
        finite_dilation(2 * np.eye(2), 2)


def test_dilation_compresses_fock_generator():
    rep = dilation_compression_check(2, TruncationConfig(0.5, 3), 4)
    assert rep.passed
    assert rep.max_residual() < 1e-12
