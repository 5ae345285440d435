import numpy as np
import pytest

from qball.algebra.poly import NCPolynomial, z
from qball.rep.fock import FockRepresentation
from qball.rep.norms import operator_norm_estimate
from qball.rep.operators import SparseTensorOperator, TruncationConfig


def single(kind, N, q=0.5):
    return SparseTensorOperator(1, [(1.0, ((kind,),))], TruncationConfig(q, N))


@pytest.mark.parametrize("N", [2, 5, 40])
def test_shift_has_norm_one(N):
    assert operator_norm_estimate(single("S", N)) == pytest.approx(1.0)


@pytest.mark.parametrize("N", [3, 6, 30])
def test_weighted_shift_norm(N):
    q = 0.5
    assert operator_norm_estimate(single("CqS", N, q)) == pytest.approx(np.sqrt(1 - q ** (2 * (N - 1))))


def test_dq_norm_is_one():
    assert operator_norm_estimate(single("Dq", 9)) == pytest.approx(1.0)


def test_lanczos_agrees_with_dense():
    cfg = TruncationConfig(0.5, 6)
    F = FockRepresentation(2, cfg)
    p = NCPolynomial.gen(z(1, 1), 2) + NCPolynomial.gen(z(2, 1), 2) * NCPolynomial.gen(z(1, 2), 2).scale(2)
    op = F.operator(p)
    dense = operator_norm_estimate(op, method="dense")
    assert operator_norm_estimate(op, method="lanczos", tol=1e-12) == pytest.approx(dense, rel=1e-8)


def test_power_iteration_agrees_with_dense():
    # clear spectral gap, so plain power iteration converges quickly
    cfg = TruncationConfig(0.5, 8)
    op = SparseTensorOperator(2, [(1.0, (("Dq",), ())), (0.7, (("Dq",), ("CqS",)))], cfg)
    dense = operator_norm_estimate(op, method="dense")
    assert operator_norm_estimate(op, method="power", tol=1e-13) == pytest.approx(dense, rel=1e-6)


def test_power_iteration_reports_non_convergence():
    from qball.rep.norms import NormDidNotConverge
    cfg = TruncationConfig(0.5, 6)
    op = FockRepresentation(2, cfg).operator(NCPolynomial.gen(z(2, 1), 2) * NCPolynomial.gen(z(1, 2), 2))
    with pytest.raises(NormDidNotConverge):
        operator_norm_estimate(op, method="power", tol=1e-15, max_iter=3)


def test_height_mask_restricts_the_domain():
    op = single("CqS", 20)
    q = 0.5
    # inputs e_0..e_3 only: the largest weight is sqrt(1 - q^8)
    assert operator_norm_estimate(op, height=3) == pytest.approx(np.sqrt(1 - q ** 8))
    assert operator_norm_estimate(op, height=-1) == 0.0


def test_scalar_operator_and_bad_args():
    cfg = TruncationConfig(0.5, 4)
    assert operator_norm_estimate(SparseTensorOperator.scalar(-2.5, 0, cfg)) == 2.5
    with pytest.raises(ValueError):
        operator_norm_estimate(single("S", 4), tol=0)
    with pytest.raises(ValueError):
        operator_norm_estimate(single("S", 4), method="magic")
