import numpy as np
import pytest
from hypothesis import given, strategies as st

from qball.rep.operators import (
    FACTOR_KINDS,
    FactorMatrix,
    LeakError,
    SparseTensorOperator,
    TruncationConfig,
    basis_vector,
    factor_weights,
    height_mask,
    leak_free_indices,
    series_identities_check,
    support_height,
)

CFG = TruncationConfig(0.5, 4)


def e(m, N=4):
    v = np.zeros(N, dtype=complex)
    v[m] = 1
    return v


def test_factor_values_at_half():
    assert np.allclose(FactorMatrix("Cq", 4, 0.5).apply(e(2)), 0.968246 * e(2), atol=1e-6)
    assert np.allclose(FactorMatrix("Dq", 4, 0.5).apply(e(3)), 0.125 * e(3))
    assert np.allclose(FactorMatrix("Sstar", 4, 0.5).apply(e(0)), 0)


def test_shift_truncates_at_the_top():
    assert np.allclose(FactorMatrix("S", 4, 0.5).apply(e(3)), 0)
    assert np.allclose(FactorMatrix("CqS", 4, 0.5).apply(e(1)), np.sqrt(1 - 0.5 ** 4) * e(2))


@pytest.mark.parametrize("kind", FACTOR_KINDS)
def test_adjoint_is_conjugate_transpose(kind):
    f = FactorMatrix(kind, 5, 0.3, scale=0.5 - 2j)
    assert np.allclose(f.adjoint().matrix, f.matrix.conj().T)


def test_cq_squared_plus_dq_squared_is_identity():
    w = factor_weights("Cq", 10, 0.4) ** 2 + factor_weights("Dq", 10, 0.4) ** 2
    assert np.allclose(w, 1, atol=0, rtol=1e-15)


def test_config_validation():
    with pytest.raises(ValueError):
        TruncationConfig(1.2, 4)
    with pytest.raises(ValueError):
        TruncationConfig(0.5, 1)
    with pytest.raises(ValueError):
        TruncationConfig(0.5, 4, safe_degree=4)
    assert TruncationConfig(0.5, 6).safe_degree == 5


def test_basis_vector_outside_truncation():
    with pytest.raises(LeakError):
        basis_vector((4, 0), CFG)


def test_leak_free_indices_and_mask():
    idx = leak_free_indices(2, 1)
    assert idx.shape == (4, 2)
    assert leak_free_indices(0, 3).shape == (1, 0)
    assert leak_free_indices(3, -1).shape == (0, 3)
    assert height_mask(2, 1, 4).sum() == 4
    v = np.zeros((4, 4))
    v[1, 3] = 1
    assert support_height(v) == 3 and support_height(0 * v) == -1


def test_series_sanity_cases():
    rep = series_identities_check(TruncationConfig(0.5, 8), terms=32)
    assert rep.passed
    cq = next(c for c in rep.checks if c.name == "Cq-series")
    assert cq.residual < 2 ** -16 * 4 / 3
    rep = series_identities_check(TruncationConfig(0.1, 8))
    assert max(c.residual for c in rep.checks) < 1e-15
    rep = series_identities_check(TruncationConfig(0.5, 8), terms=0)
    cq = next(c for c in rep.checks if c.name == "Cq-series")
    assert cq.residual == pytest.approx(np.sqrt(1 - 0.5 ** 14))


kinds = st.sampled_from(FACTOR_KINDS)
factor = st.lists(kinds, max_size=2).map(tuple)
terms = st.lists(st.tuples(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
                           st.tuples(factor, factor)), max_size=3)
ops = terms.map(lambda t: SparseTensorOperator(2, t, CFG))


def dense(op):
    return op.to_dense(CFG)


@given(ops, ops)
def test_composition_matches_dense(a, b):
    assert np.allclose(dense(a @ b), dense(a) @ dense(b))


@given(ops, ops)
def test_sum_and_adjoint_match_dense(a, b):
    assert np.allclose(dense(a + b), dense(a) + dense(b))
    assert np.allclose(dense(a.adjoint()), dense(a).conj().T)


@given(ops, st.integers(0, 15))
def test_apply_and_basis_action_match_dense(a, flat):
    m = np.unravel_index(flat, (4, 4))
    v = basis_vector(m, CFG)
    col = dense(a)[:, flat]
    assert np.allclose(a.apply(v, CFG).ravel(), col)
    assert a.column_norms(np.array([m]), CFG)[0] == pytest.approx(np.linalg.norm(col), abs=1e-12)


@given(ops)
def test_json_round_trip(a):
    assert SparseTensorOperator.from_json(a.to_json()).allclose(a)


def test_slot_evaluation():
    op = SparseTensorOperator(2, [(2.0, (("Dq",), ("S",))), (3.0, ((), ("S",)))], CFG)
    ev = op.evaluate_slot(1, 0.3)
    assert ev.slots == 1
    assert ev.term_dict() == {(("S",),): 3.0}
    assert op.evaluate_all([0.0, np.pi]) == pytest.approx(-3.0)
    with pytest.raises(ValueError):
        op.evaluate_slot(3, 0.0)


def test_insert_slot_then_evaluate_round_trip():
    op = SparseTensorOperator(2, [(1.5, (("CqS",), ()))], CFG)
    assert op.insert_slot(2, ()).evaluate_slot(2, 1.0).allclose(op)


def test_dense_refuses_large():
    with pytest.raises(MemoryError):
        SparseTensorOperator.identity(7, CFG).to_dense()
