import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qball.algebra.laurent import LaurentScalar
from qball.algebra.poly import MATQ, NCPolynomial, z
from qball.rep.fock import FockRepresentation
from qball.rep.norms import operator_norm_estimate
from qball.rep.operators import TruncationConfig
from qball.verify.sampling import circle_sup, sample_polynomial, truncation_slack


@given(st.integers(0, 10 ** 9), st.integers(1, 3), st.integers(0, 4), st.booleans())
def test_sampling_is_deterministic(seed, n, d, holo):
    a = sample_polynomial(seed, n, d, holomorphic_only=holo)
    b = sample_polynomial(seed, n, d, holomorphic_only=holo)
    assert a == b
    assert not a.is_zero()
    assert a.degree() <= d
    if holo:
        assert a.is_holomorphic()


def test_holomorphic_samples_keep_full_degree():
    # holomorphic normal forms never lower the degree
    for seed in range(20):
        assert sample_polynomial(seed, 2, 3, holomorphic_only=True).degree() == 3


def test_degree_zero_is_scalar():
    p = sample_polynomial(5, 2, 0)
    assert p.degree() == 0 and len(p) == 1


def test_degree_above_safe_degree():
    with pytest.raises(ValueError):
        sample_polynomial(0, 2, 5, safe_degree=3)
    with pytest.raises(ValueError):
        sample_polynomial(0, 2, -1)


def test_slack_formula():
    p = NCPolynomial(MATQ, 1, {(z(1, 1),): LaurentScalar.const(2), (z(1, 1), z(1, 1)): LaurentScalar.const(-1)})
    assert truncation_slack(p, 10) == pytest.approx(math.sqrt(2) * math.pi * 4 / 12)
    assert truncation_slack(p, -1) == math.inf
    assert truncation_slack(NCPolynomial.one(MATQ, 1), 3) == 0


def test_circle_sup():
    u = NCPolynomial.gen(z(1, 1), 1)
    assert circle_sup(u * u + u, 0.5) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        circle_sup(NCPolynomial.gen(z(1, 1), 2), 0.5)


def test_single_generator_norm_against_circle():
    q = 0.5
    u = NCPolynomial.gen(z(1, 1), 1)
    for N in (8, 32):
        cfg = TruncationConfig(q, N)
        F = operator_norm_estimate(FockRepresentation(1, cfg).operator(u), height=N - 2)
        assert F == pytest.approx(math.sqrt(1 - q ** (2 * (N - 1))))
        assert circle_sup(u, q) == pytest.approx(1.0)


def test_z_squared_plus_z_deficit_at_256():
    q, N = 0.5, 256
    u = NCPolynomial.gen(z(1, 1), 1)
    p = u * u + u
    cfg = TruncationConfig(q, N)
    F = operator_norm_estimate(FockRepresentation(1, cfg).operator(p), height=N - 3)
    bdd = circle_sup(p, q)
    assert bdd - F < 0.02
    assert bdd <= F + truncation_slack(p, N - 3, q)
