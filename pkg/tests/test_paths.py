from math import comb

import numpy as np
import pytest

from qball.algebra.laurent import ONE, LaurentScalar
from qball.algebra.poly import t
from qball.rep.operators import TruncationConfig
from qball.rep.paths import (
    brute_force_dense,
    brute_force_generator,
    brute_force_terms,
    enumerate_paths,
    fock_generator,
    path_terms,
    pi_sigma,
    reduced_word_u,
    slot_index,
    slot_position,
    su2_rep,
)

CFG = TruncationConfig(0.5, 6)


def e(m, N=6):
    v = np.zeros(N)
    v[m] = 1
    return v


def test_reduced_words():
    assert reduced_word_u(1) == [1]
    assert reduced_word_u(2) == [2, 1, 3, 2]
    assert reduced_word_u(3) == [3, 2, 1, 4, 3, 2, 5, 4, 3]


def test_slot_numbering_is_a_bijection():
    for n in (1, 2, 3, 4):
        hs = [slot_index(n, r, c) for r in range(1, n + 1) for c in range(1, n + 1)]
        assert sorted(hs) == list(range(1, n * n + 1))
        for h in hs:
            assert slot_index(n, *slot_position(n, h)) == h
        # slot h carries the transposition read off the reduced word
        word = reduced_word_u(n)
        for r in range(1, n + 1):
            for c in range(1, n + 1):
                assert word[slot_index(n, r, c) - 1] == r + c - 1


def test_su2_representation_on_vacuum():
    q = CFG.q
    assert np.allclose(su2_rep(2, 1, CFG).apply(e(0)), -e(0))
    assert np.allclose(su2_rep(2, 2, CFG).apply(e(0)), np.sqrt(1 - q * q) * e(1))
    assert np.allclose(su2_rep(1, 1, CFG).apply(e(0)), 0)


def test_pi_sigma_cases():
    assert pi_sigma(1, t(3, 3), CFG, 3).kind == "I"
    f = pi_sigma(2, t(2, 3), CFG, 3)
    assert f.kind == "Dq" and f.scale == pytest.approx(CFG.q)
    assert pi_sigma(2, t(1, 3), CFG, 3) is None


def test_six_diagrams_for_n3_corner():
    paths = enumerate_paths(3, 1, 1)
    assert len(paths) == 6
    first = paths[0]
    assert first.factors == ("Dq", "Dq", "CqS", "I", "I", "Dq", "I", "I", "Dq")
    assert first.coeff == ONE


def test_single_diagram_at_the_far_corner():
    for n in (1, 2, 3, 4):
        (p,) = enumerate_paths(n, n, n)
        assert p.count("right-hook") == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_path_count_is_binomial(n):
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            paths = enumerate_paths(n, j, k)
            assert len(paths) == comb(2 * n - j - k, n - j)
            assert all(p.count("right-hook") >= 1 for p in paths)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_path_terms_match_brute_force(n):
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            assert path_terms(n, j, k) == brute_force_terms(n, j, k)


def test_count_matches_brute_force_nonzero_terms():
    for j in (1, 2, 3):
        for k in (1, 2, 3):
            assert len(brute_force_terms(3, j, k)) == comb(6 - j - k, 3 - j)


def test_operator_matches_dense_oracle_n2():
    for j in (1, 2):
        for k in (1, 2):
            a = fock_generator(2, j, k, CFG).to_dense()
            assert np.array_equal(a, brute_force_dense(2, j, k, CFG))


def test_operator_matches_brute_force_n3():
    cfg = TruncationConfig(0.5, 3)
    assert fock_generator(3, 2, 1, cfg).allclose(brute_force_generator(3, 2, 1, cfg))


def test_n1_generator_is_the_weighted_shift():
    (term,) = path_terms(1, 1, 1).items()
    assert term == (("CqS",), ONE)


def test_bad_indices():
    with pytest.raises(ValueError):
        enumerate_paths(2, 3, 1)
