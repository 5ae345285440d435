import pytest
from hypothesis import given, strategies as st

from qball.algebra.laurent import LaurentScalar
from qball.algebra.poly import (
    MATQ,
    SLNQ,
    AlgebraMismatch,
    GeneratorSymbol,
    NCPolynomial,
    free_star,
    from_text,
    t,
    to_text,
    z,
    zs,
)


def gen(s, n=2, c=1):
    return NCPolynomial.gen(s, n, c)


def test_product_concatenates_words():
    p = gen(z(1, 1)) * gen(z(1, 2))
    assert p.terms == {(z(1, 1), z(1, 2)): LaurentScalar.const(1)}


def test_scalars_cancel():
    p = gen(z(1, 1), c=LaurentScalar.q_pow(1)) * gen(z(1, 1), c=LaurentScalar.q_pow(-1))
    assert p.terms == {(z(1, 1), z(1, 1)): LaurentScalar.const(1)}


def test_unit_is_neutral():
    p = gen(z(2, 1)) + gen(zs(1, 2), c=3)
    assert NCPolynomial.one(MATQ, 2) * p == p
    assert p * NCPolynomial.one(MATQ, 2) == p


def test_no_zero_coefficients_stored():
    p = gen(z(1, 1)) - gen(z(1, 1))
    assert p.is_zero() and len(p) == 0


def test_symbol_text_puts_lower_index_first():
    s = z(1, 2)  # lower 1, upper 2
    assert (s.row, s.col) == (2, 1)
    assert s.text() == "z[1,2]"
    assert t(1, 2).text() == "t[1,2]"


def test_indices_are_checked():
    with pytest.raises(ValueError):
        NCPolynomial.gen(z(3, 1), 2)


def test_tags_do_not_mix():
    with pytest.raises(AlgebraMismatch):
        gen(z(1, 1)) + NCPolynomial.gen(t(1, 1), 2)
    with pytest.raises(ValueError):
        NCPolynomial(SLNQ, 2, {(z(1, 1),): LaurentScalar.const(1)})


def test_free_star_reverses_and_swaps():
    p = gen(z(1, 1)) * gen(zs(2, 1), c=LaurentScalar.phase(1))
    s = free_star(p)
    assert s.terms == {(z(2, 1), zs(1, 1)): LaurentScalar.phase(-1)}
    assert free_star(s) == p


def test_degree_and_holomorphic_flag():
    p = gen(z(1, 1)) * gen(z(2, 2)) + NCPolynomial.scalar(MATQ, 2, 1)
    assert p.degree() == 2 and p.is_holomorphic()
    assert not (p + gen(zs(1, 1))).is_holomorphic()


letters = st.sampled_from([GeneratorSymbol(k, r, c) for k in ("z", "z*") for r in (1, 2) for c in (1, 2)])
words = st.lists(letters, max_size=4).map(tuple)
polys = st.dictionaries(words, st.integers(-3, 3).filter(bool).map(LaurentScalar.const), max_size=4) \
    .map(lambda d: NCPolynomial(MATQ, 2, d))


@given(polys)
def test_text_round_trip(p):
    assert from_text(to_text(p), MATQ, 2) == p


@given(polys, polys, polys)
def test_free_algebra_is_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(polys, polys)
def test_free_star_is_an_antihomomorphism(a, b):
    assert free_star(a * b) == free_star(b) * free_star(a)
