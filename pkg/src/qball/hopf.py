"""Hopf structure of C[SU_n]_q and the two-sided coaction on Pol(Mat_n)_q.

Tensor products are kept as maps from tuples of words to Laurent scalars;
each leg is normal-formed on its own after every product.
"""
from __future__ import annotations

from .algebra.laurent import ONE, ZERO, LaurentScalar, format_laurent, parse_laurent
from .algebra.poly import (
    MATQ,
    SLNQ,
    NCPolynomial,
    _split_top,
    from_text,
    t,
    word_key,
    word_text,
    z,
)
from .algebra.relations import complement_minor, minus_q_pow, quantum_minor
from .algebra.rewrite import POL, SL, rewrite_system

__all__ = [
    "TensorPolynomial", "comultiply", "counit", "antipode", "quantum_minor", "coaction_Dn",
    "comultiply_leg", "counit_leg", "multiply_legs", "antipode_axiom_residual",
]


def _rs(tag, n):
    return rewrite_system(SL if tag == SLNQ else POL, n)


def _add(acc, key, c):
    v = acc.get(key)
    v = c if v is None else v + c
    if v.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = v


class TensorPolynomial:
    """Element of A_1 (x) ... (x) A_k with fixed (tag, n) per leg."""

    __slots__ = ("legs", "_terms")

    def __init__(self, legs, terms=None, reduce: bool = True):
        self.legs = tuple(tuple(l) for l in legs)
        clean = {}
        for key, c in (terms or {}).items():
            c = LaurentScalar.coerce(c)
            if not c.is_zero():
                _add(clean, tuple(tuple(w) for w in key), c)
        self._terms = clean
        if reduce:
            self._terms = self._reduced_terms()

    @property
    def arity(self) -> int:
        return len(self.legs)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def _reduced_terms(self) -> dict:
        systems = [_rs(tag, n) if n > 0 else None for tag, n in self.legs]
        out = {}
        for key, c in self._terms.items():
            partial = {(): c}
            for leg, w in enumerate(key):
                rs = systems[leg]
                if rs is None:
                    nf = {w: ONE}
                else:
                    tag, n = self.legs[leg]
                    nf = rs.normal_form(NCPolynomial(tag, n, {w: ONE}, check=False)).terms
                nxt = {}
                for pk, pc in partial.items():
                    for w2, c2 in nf.items():
                        _add(nxt, pk + (w2,), pc * c2)
                partial = nxt
            for pk, pc in partial.items():
                _add(out, pk, pc)
        return out

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            _add(out, k, c)
        return TensorPolynomial(self.legs, out, reduce=False)

    def __neg__(self):
        return TensorPolynomial(self.legs, {k: -c for k, c in self._terms.items()}, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = LaurentScalar.coerce(c)
        return TensorPolynomial(self.legs, {k: v * c for k, v in self._terms.items()}, reduce=False)

    def __mul__(self, other):
        if not isinstance(other, TensorPolynomial):
            return self.scale(other)
        self._check(other)
        out = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                _add(out, tuple(a + b for a, b in zip(k1, k2)), c1 * c2)
        return TensorPolynomial(self.legs, out, reduce=True)

    def _check(self, other):
        if self.legs != other.legs:
            raise ValueError(f"leg mismatch {self.legs} vs {other.legs}")

    def __eq__(self, other):
        if not isinstance(other, TensorPolynomial):
            return NotImplemented
        return self.legs == other.legs and self._terms == other._terms

    def __hash__(self):
        return hash((self.legs, frozenset(self._terms.items())))

    def leg_polynomial(self, key_index: int) -> NCPolynomial:
        """Collapse to leg ``key_index`` when every other leg is the empty word."""
        tag, n = self.legs[key_index]
        out = {}
        for key, c in self._terms.items():
            if any(w for i, w in enumerate(key) if i != key_index):
                raise ValueError("other legs are not scalar")
            _add(out, key[key_index], c)
        return NCPolynomial(tag, n, out, check=False)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        items = sorted(self._terms.items(), key=lambda kv: tuple(word_key(w) for w in kv[0]), reverse=True)
        parts = []
        for key, c in items:
            legs = " ⊗ ".join(word_text(w) if w else "1" for w in key)
            parts.append(f"({format_laurent(c)})*{legs}")
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str, legs) -> "TensorPolynomial":
        text = text.strip()
        if text == "0":
            return cls(legs)
        terms = {}
        for chunk in _split_top(text, " + "):
            chunk = chunk.strip()
            depth = 0
            for idx, ch in enumerate(chunk):
                depth += ch == "("
                depth -= ch == ")"
                if depth == 0:
                    break
            c = parse_laurent(chunk[1:idx])
            body = chunk[idx + 2:]
            key = []
            for (tag, n), piece in zip(legs, body.split(" ⊗ ")):
                piece = piece.strip()
                if piece == "1":
                    key.append(())
                else:
                    key.append(next(iter(from_text(f"(1)*{piece}", tag, n).terms)))
            _add(terms, tuple(key), c)
        return cls(legs, terms, reduce=False)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"TensorPolynomial(arity={self.arity}, {self.to_text()!r})"


def _expand(p: NCPolynomial) -> NCPolynomial:
    return _rs(p.tag, p.n).expand_stars(p)


def _require_sl(p: NCPolynomial):
    if p.tag != SLNQ:
        raise ValueError(f"expected an element of C[SL_n]_q, got tag {p.tag}")


def _hom_to_tensor(p: NCPolynomial, legs, letter_image) -> TensorPolynomial:
    """Extend a letter -> TensorPolynomial map multiplicatively, reducing after each product."""
    unit_key = tuple(() for _ in legs)
    total = TensorPolynomial(legs)
    cache = {}
    for w, c in p.items():
        acc = TensorPolynomial(legs, {unit_key: c}, reduce=False)
        for s in w:
            img = cache.get(s)
            if img is None:
                img = cache[s] = letter_image(s)
            acc = acc * img
            if acc.is_zero():
                break
        total = total + acc
    return total


def comultiply(p: NCPolynomial) -> TensorPolynomial:
    """Delta(t_ij) = sum_k t_ik (x) t_kj, extended as an algebra map."""
    _require_sl(p)
    n = p.n
    legs = ((SLNQ, n), (SLNQ, n))
    p = _expand(p)

    def image(s):
        return TensorPolynomial(legs, {((t(s.row, k),), (t(k, s.col),)): ONE for k in range(1, n + 1)},
                                reduce=False)
    return _hom_to_tensor(p, legs, image)


def counit(p: NCPolynomial) -> LaurentScalar:
    """epsilon(t_ij) = delta_ij, multiplicative."""
    _require_sl(p)
    p = _expand(p)
    total = ZERO
    for w, c in p.items():
        if all(s.row == s.col for s in w):
            total = total + c
    return total


def antipode(p: NCPolynomial, reduce: bool = True) -> NCPolynomial:
    """S(t_ij) = (-q)^{i-j} det_q t_{ji}, extended as an antihomomorphism."""
    _require_sl(p)
    n = p.n
    p = _expand(p)
    cache = {}
    out = NCPolynomial(SLNQ, n)
    for w, c in p.items():
        acc = NCPolynomial.scalar(SLNQ, n, c)
        for s in reversed(w):
            img = cache.get(s)
            if img is None:
                img = cache[s] = complement_minor(s.col, s.row, n, SLNQ).scale(minus_q_pow(s.row - s.col))
            acc = acc * img
        out = out + acc
    return _rs(SLNQ, n).normal_form(out) if reduce else out


def comultiply_leg(tp: TensorPolynomial, leg: int) -> TensorPolynomial:
    """Apply Delta to one SL leg, producing arity + 1."""
    tag, n = tp.legs[leg]
    if tag != SLNQ:
        raise ValueError("can only comultiply an SL leg")
    legs = tp.legs[:leg] + ((SLNQ, n), (SLNQ, n)) + tp.legs[leg + 1:]
    out = {}
    for key, c in tp.items():
        d = comultiply(NCPolynomial(SLNQ, n, {key[leg]: ONE}, check=False))
        for (a, b), c2 in d.items():
            _add(out, key[:leg] + (a, b) + key[leg + 1:], c * c2)
    return TensorPolynomial(legs, out, reduce=False)


def counit_leg(tp: TensorPolynomial, leg: int) -> TensorPolynomial:
    """Apply epsilon to one SL leg, producing arity - 1."""
    tag, n = tp.legs[leg]
    legs = tp.legs[:leg] + tp.legs[leg + 1:]
    out = {}
    for key, c in tp.items():
        e = counit(NCPolynomial(SLNQ, n, {key[leg]: ONE}, check=False))
        if not e.is_zero():
            _add(out, key[:leg] + key[leg + 1:], c * e)
    return TensorPolynomial(legs, out, reduce=False)


def multiply_legs(tp: TensorPolynomial, apply_left=None) -> NCPolynomial:
    """m: A (x) A -> A, optionally applying a map to the left leg first."""
    if tp.arity != 2 or tp.legs[0] != tp.legs[1]:
        raise ValueError("need two equal legs")
    tag, n = tp.legs[0]
    out = NCPolynomial(tag, n)
    for (a, b), c in tp.items():
        left = NCPolynomial(tag, n, {a: ONE}, check=False)
        if apply_left is not None:
            left = apply_left(left)
        out = out + (left * NCPolynomial(tag, n, {b: c}, check=False))
    return _rs(tag, n).normal_form(out)


def antipode_axiom_residual(p: NCPolynomial) -> NCPolynomial:
    """m (S (x) id) Delta(p) - epsilon(p) 1, in normal form."""
    lhs = multiply_legs(comultiply(p), lambda x: antipode(x, reduce=False))
    return lhs - NCPolynomial.scalar(SLNQ, p.n, counit(p))


def coaction_Dn(p: NCPolynomial, reduce: bool = True) -> TensorPolynomial:
    """D_n(z_j^i) = sum_{a,b} z_b^a (x) t_{b,j} (x) t_{a,i}, extended as a *-homomorphism."""
    if p.tag != MATQ:
        raise ValueError("the coaction is defined on Pol(Mat_n)_q")
    n = p.n
    legs = ((MATQ, n), (SLNQ, n), (SLNQ, n))

    def image(s):
        i, j = s.row, s.col  # s = z_j^i
        terms = {}
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                if s.starred:
                    key = ((z(b, a).star(),), (t(b, j).star(),), (t(a, i).star(),))
                else:
                    key = ((z(b, a),), (t(b, j),), (t(a, i),))
                terms[key] = ONE
        return TensorPolynomial(legs, terms, reduce=reduce)

    if not reduce:
        unit_key = ((), (), ())
        total = TensorPolynomial(legs)
        for w, c in p.items():
            acc = TensorPolynomial(legs, {unit_key: c}, reduce=False)
            for s in w:
                img = image(s)
                out = {}
                for k1, c1 in acc.items():
                    for k2, c2 in img.items():
                        _add(out, tuple(x + y for x, y in zip(k1, k2)), c1 * c2)
                acc = TensorPolynomial(legs, out, reduce=False)
            total = total + acc
        return total
    return _hom_to_tensor(p, legs, image)
