import pytest

from qball.algebra.laurent import ONE, LaurentScalar
from qball.algebra.poly import MATQ, SLNQ, NCPolynomial, t, z, zs
from qball.algebra.relations import pol_relations, sl_relations
from qball.hopf import (
    TensorPolynomial,
    antipode,
    antipode_axiom_residual,
    coaction_Dn,
    comultiply,
    comultiply_leg,
    counit,
    counit_leg,
)

Q = LaurentScalar.q_pow
SL2 = ((SLNQ, 2), (SLNQ, 2))


def tg(i, j, n=2):
    return NCPolynomial.gen(t(i, j), n)


def gens(n):
    return [tg(i, j, n) for i in range(1, n + 1) for j in range(1, n + 1)]


def test_comultiply_t11():
    want = TensorPolynomial(SL2, {((t(1, 1),), (t(1, 1),)): ONE, ((t(1, 2),), (t(2, 1),)): ONE})
    assert comultiply(tg(1, 1)) == want


def test_comultiply_unit():
    assert comultiply(NCPolynomial.one(SLNQ, 2)) == TensorPolynomial(SL2, {((), ()): ONE})


def test_counit_values():
    assert counit(tg(1, 2)).is_zero()
    assert counit(tg(1, 1) * tg(2, 2)) == ONE
    assert counit(NCPolynomial.one(SLNQ, 2)) == ONE


def test_antipode_values():
    assert antipode(tg(1, 1)) == tg(2, 2)
    assert antipode(antipode(tg(1, 2))) == tg(1, 2).scale(Q(-2))
    one = NCPolynomial.one(SLNQ, 2)
    assert antipode(one) == one


@pytest.mark.parametrize("n", [2, 3])
def test_hopf_axioms_on_generators(n):
    for g in gens(n):
        d = comultiply(g)
        assert comultiply_leg(d, 0) == comultiply_leg(d, 1)
        assert counit_leg(d, 0).leg_polynomial(0) == g
        assert counit_leg(d, 1).leg_polynomial(0) == g
        assert antipode_axiom_residual(g).is_zero()
        (w, _), = g.items()
        s = w[0]
        assert antipode(antipode(g)) == g.scale(Q(2 * (s.row - s.col)))


def test_antipode_axiom_on_products():
    for a in gens(2):
        for b in gens(2):
            assert antipode_axiom_residual(a * b).is_zero()


def test_comultiplication_respects_relations():
    for fam, r in sl_relations(2):
        assert comultiply(r).is_zero(), fam


def test_text_round_trip():
    d = comultiply(tg(1, 2) * tg(2, 1))
    assert TensorPolynomial.from_text(d.to_text(), SL2) == d


def test_coaction_n1_is_trivial_on_the_sl_legs():
    # C[SL_1]_q is the scalars, so t_{1,1} = 1 and the image collapses
    img = coaction_Dn(NCPolynomial.gen(z(1, 1), 1))
    legs = ((MATQ, 1), (SLNQ, 1), (SLNQ, 1))
    assert img == TensorPolynomial(legs, {((z(1, 1),), (), ()): ONE})


def test_coaction_unreduced_n1_keeps_letters():
    img = coaction_Dn(NCPolynomial.gen(z(1, 1), 1), reduce=False)
    assert set(k for k, _ in img.items()) == {((z(1, 1),), (t(1, 1),), (t(1, 1),))}


def test_coaction_counit_collapse():
    for s in (z(1, 1), z(2, 1), zs(1, 2)):
        p = NCPolynomial.gen(s, 2)
        col = counit_leg(counit_leg(coaction_Dn(p), 2), 1)
        assert col.leg_polynomial(0) == p


def test_coaction_preserves_relations_n2():
    for fam, r in pol_relations(2):
        assert coaction_Dn(r).is_zero(), fam


def test_sl_tag_required():
    with pytest.raises(ValueError):
        comultiply(NCPolynomial.gen(z(1, 1), 2))
