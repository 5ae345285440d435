"""Action of the quantum enveloping algebra U_q(su_n x su_n) on Pol(Mat_n)_q.

Generators are E_k, F_k, K_k, K_k^{-1} with k in 1..2n-1, k != n. Indices
k < n act on the lower index of z_a^alpha, indices k > n act on the upper
index through m = 2n - k.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .laurent import ONE, LaurentScalar
from .poly import MATQ, GeneratorSymbol, NCPolynomial
from .rewrite import POL, normal_form, rewrite_system

HALF = Fraction(1, 2)
KINDS = ("E", "F", "K", "Kinv")


class UqGenerator(NamedTuple):
    kind: str
    k: int

    def __str__(self):
        return f"{self.kind}_{self.k}"


def _check(gen: UqGenerator, n: int):
    if gen.kind not in KINDS:
        raise ValueError(f"unknown U_q generator kind {gen.kind!r}")
    if not (1 <= gen.k <= 2 * n - 1) or gen.k == n:
        raise ValueError(f"generator index {gen.k} unsupported for n={n} (need 1..{2 * n - 1}, not {n})")


def _plain_action(gen: UqGenerator, s: GeneratorSymbol, n: int):
    """Return (coeff, symbol) for the image of a plain generator, or None for 0."""
    kind, k = gen
    if k < n:
        idx, m = s.col, k
    else:
        idx, m = s.row, 2 * n - k

    def moved(delta):
        if k < n:
            return GeneratorSymbol(s.kind, s.row, s.col + delta)
        return GeneratorSymbol(s.kind, s.row + delta, s.col)

    if kind in ("K", "Kinv"):
        sign = 1 if kind == "K" else -1
        if idx == m:
            return LaurentScalar.q_pow(sign), s
        if idx == m + 1:
            return LaurentScalar.q_pow(-sign), s
        return ONE, s
    if kind == "F":
        if idx == m:
            return LaurentScalar.q_pow(HALF), moved(+1)
        return None
    if kind == "E":
        if idx == m + 1:
            return LaurentScalar.q_pow(-HALF), moved(-1)
        return None
    raise AssertionError(kind)


_DUAL = {"K": "Kinv", "Kinv": "K", "E": "F", "F": "E"}
# xi(f^*) = c * (xi'(f))^*  with xi' = _DUAL[xi]
_STAR_FACTOR = {"K": ONE, "Kinv": ONE, "E": LaurentScalar.q_pow(-2, -1), "F": LaurentScalar.q_pow(2, -1)}


def letter_action(gen: UqGenerator, s: GeneratorSymbol, n: int):
    if not s.starred:
        return _plain_action(gen, s, n)
    res = _plain_action(UqGenerator(_DUAL[gen.kind], gen.k), s.star(), n)
    if res is None:
        return None
    c, img = res
    return _STAR_FACTOR[gen.kind] * c.conj(), img.star()


def _k_scalar(gen: UqGenerator, word, n: int) -> LaurentScalar:
    c = ONE
    for s in word:
        c = c * letter_action(gen, s, n)[0]
    return c


def word_action(gen: UqGenerator, word, n: int) -> dict:
    """Action on a single word via the coproduct of the generator."""
    if gen.kind in ("K", "Kinv"):
        return {word: _k_scalar(gen, word, n)}
    out = {}
    kinv = UqGenerator("Kinv", gen.k)
    kk = UqGenerator("K", gen.k)
    for i, s in enumerate(word):
        res = letter_action(gen, s, n)
        if res is None:
            continue
        c, img = res
        pre, post = word[:i], word[i + 1:]
        if gen.kind == "E":
            # E(x1...xm) = sum_i K(x1..x_{i-1}) E(x_i) x_{i+1}..x_m
            c = c * _k_scalar(kk, pre, n)
        else:
            # F(x1...xm) = sum_i x1..x_{i-1} F(x_i) K^{-1}(x_{i+1}..x_m)
            c = c * _k_scalar(kinv, post, n)
        w = pre + (img,) + post
        v = out.get(w)
        v = c if v is None else v + c
        if v.is_zero():
            out.pop(w, None)
        else:
            out[w] = v
    return out


def uq_action(gen: UqGenerator, p: NCPolynomial, reduce: bool = True) -> NCPolynomial:
    """xi(p) for a generator xi, extended by the module-algebra rule."""
    if p.tag != MATQ:
        raise ValueError("the U_q action is defined on Pol(Mat_n)_q")
    _check(gen, p.n)
    terms = {}
    for w, c in p.items():
        for w2, c2 in word_action(gen, w, p.n).items():
            v = terms.get(w2)
            v = c * c2 if v is None else v + c * c2
            terms[w2] = v
    out = NCPolynomial(MATQ, p.n, terms, check=False)
    return normal_form(out, rewrite_system(POL, p.n)) if reduce else out


def uq_generators(n: int) -> list:
    return [UqGenerator(kind, k) for k in range(1, 2 * n) if k != n for kind in KINDS]


def coproduct_action(gen: UqGenerator, f: NCPolynomial, g: NCPolynomial) -> NCPolynomial:
    """sum xi'(f) xi''(g) computed from the coproduct, independently of word_action."""
    rs = rewrite_system(POL, f.n)
    k = UqGenerator("K", gen.k)
    kinv = UqGenerator("Kinv", gen.k)
    if gen.kind in ("K", "Kinv"):
        res = uq_action(gen, f) * uq_action(gen, g)
    elif gen.kind == "E":
        res = uq_action(gen, f) * g + uq_action(k, f) * uq_action(gen, g)
    else:
        res = uq_action(gen, f) * uq_action(kinv, g) + f * uq_action(gen, g)
    return normal_form(res, rs)
