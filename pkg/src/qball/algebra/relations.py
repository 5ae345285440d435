"""Defining relations, q-determinants, quantum minors and the boundary ideal.

Relations are produced in two shapes: as oriented rules ``(lhs_word, rhs)``
for the rewrite system, and as polynomials ``lhs - rhs`` for checks.
"""
from __future__ import annotations

from itertools import permutations

from .laurent import ONE, ZERO, LaurentScalar
from .poly import MATQ, SLNQ, GeneratorSymbol, NCPolynomial, t, z, zs

Q = LaurentScalar.q_pow(1)
Q2 = LaurentScalar.q_pow(2)
Q_MINUS_QINV = LaurentScalar({1: 1, -1: -1})


def inversions(perm) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])


def minus_q_pow(k: int) -> LaurentScalar:
    """(-q)^k."""
    return LaurentScalar.q_pow(k, -1 if k % 2 else 1)


def r_matrix(i: int, j: int, k: int, l: int) -> LaurentScalar:
    """R_{ij}^{kl} of the holomorphic/antiholomorphic cross relation."""
    if i != j and i == k and j == l:
        return LaurentScalar.q_pow(-1)
    if i == j == k == l:
        return ONE
    if i == j and k == l and l > j:
        return LaurentScalar({0: 1, -2: -1})
    return ZERO


def _plain(tag, alpha, a):
    # the t-relations are the z-relations under z_a^alpha <-> t_{alpha,a}
    return z(a, alpha) if tag == MATQ else t(alpha, a)


def holomorphic_rules(n: int, tag: str = MATQ):
    """Rules rewriting every ascending pair of plain letters.

    Letters are compared by (upper, lower) = (alpha, a); a word is normal
    when these keys weakly descend.
    """
    rules = []
    for alpha in range(1, n + 1):
        for a in range(1, n + 1):
            for beta in range(1, n + 1):
                for b in range(1, n + 1):
                    if (alpha, a) >= (beta, b):
                        continue
                    x, y = _plain(tag, alpha, a), _plain(tag, beta, b)
                    if alpha == beta or a == b:
                        # x y = q y x
                        rhs = {(y, x): Q}
                    elif a > b:
                        rhs = {(y, x): ONE}
                    else:
                        # alpha < beta and a < b
                        rhs = {(y, x): ONE, (_plain(tag, beta, a), _plain(tag, alpha, b)): Q_MINUS_QINV}
                    rules.append(((x, y), rhs))
    return rules


def antiholomorphic_rules(n: int):
    """Star images of the holomorphic rules: descending starred pairs are rewritten."""
    rules = []
    for (x, y), rhs in holomorphic_rules(n, MATQ):
        lhs = (y.star(), x.star())
        new = {tuple(s.star() for s in reversed(w)): c.conj() for w, c in rhs.items()}
        rules.append((lhs, new))
    return rules


def cross_rules(n: int):
    """(z_b^beta)^* z_a^alpha -> q^2 sum R R z (z)^* + (1 - q^2) delta delta."""
    rules = []
    one_minus_q2 = LaurentScalar({0: 1, 2: -1})
    for beta in range(1, n + 1):
        for b in range(1, n + 1):
            for alpha in range(1, n + 1):
                for a in range(1, n + 1):
                    rhs = {}
                    for b2 in range(1, n + 1):
                        for a2 in range(1, n + 1):
                            r1 = r_matrix(b, a, b2, a2)
                            if r1.is_zero():
                                continue
                            for be2 in range(1, n + 1):
                                for al2 in range(1, n + 1):
                                    r2 = r_matrix(beta, alpha, be2, al2)
                                    if r2.is_zero():
                                        continue
                                    w = (z(a2, al2), zs(b2, be2))
                                    c = rhs.get(w, ZERO) + Q2 * r1 * r2
                                    if c.is_zero():
                                        rhs.pop(w, None)
                                    else:
                                        rhs[w] = c
                    if a == b and alpha == beta:
                        rhs[()] = one_minus_q2
                    rules.append(((zs(b, beta), z(a, alpha)), rhs))
    return rules


def rule_polynomial(rule, tag: str, n: int) -> NCPolynomial:
    lhs, rhs = rule
    return NCPolynomial(tag, n, {lhs: ONE}) - NCPolynomial(tag, n, rhs)


def pol_relations(n: int, families=("holomorphic", "antiholomorphic", "cross")) -> list:
    """Defining relations of Pol(Mat_n)_q as ``(family, polynomial)`` pairs."""
    out = []
    if "holomorphic" in families:
        out += [("holomorphic", rule_polynomial(r, MATQ, n)) for r in holomorphic_rules(n)]
    if "antiholomorphic" in families:
        out += [("antiholomorphic", rule_polynomial(r, MATQ, n)) for r in antiholomorphic_rules(n)]
    if "cross" in families:
        out += [("cross", rule_polynomial(r, MATQ, n)) for r in cross_rules(n)]
    return out


def q_determinant(n: int, tag: str = MATQ) -> NCPolynomial:
    """sum_s (-q)^{l(s)} z_1^{s(1)} ... z_n^{s(n)}.

    For the t-generators this reads sum_s (-q)^{l(s)} t_{s(1),1} ... t_{s(n),n}.
    """
    return quantum_minor(tuple(range(1, n + 1)), tuple(range(1, n + 1)), tag, n)


def quantum_minor(rows, cols, tag: str = SLNQ, n: int | None = None, expansion: str | None = None) -> NCPolynomial:
    """q-determinant of the submatrix with the given (kept) rows and columns.

    ``expansion='columns'`` gives sum_s (-q)^{l(s)} x_{r_s(1), c_1} ... x_{r_s(m), c_m}
    (the convention of det_q z); ``'rows'`` gives
    sum_s (-q)^{l(s)} x_{r_1, c_s(1)} ... x_{r_m, c_s(m)}. Both agree in the
    algebra. Default: columns for MatQ, rows for SLnQ.
    """
    rows, cols = tuple(sorted(rows)), tuple(sorted(cols))
    if len(rows) != len(cols):
        raise ValueError(f"minor needs as many rows as columns, got {rows} and {cols}")
    if n is None:
        n = max(rows + cols, default=1)
    if expansion is None:
        expansion = "columns" if tag == MATQ else "rows"
    m = len(rows)
    terms = {}
    for perm in permutations(range(m)):
        c = minus_q_pow(inversions(perm))
        word = []
        for pos in range(m):
            if expansion == "columns":
                r, k = rows[perm[pos]], cols[pos]
            else:
                r, k = rows[pos], cols[perm[pos]]
            word.append(_plain(tag, r, k))
        terms[tuple(word)] = c
    return NCPolynomial(tag, n, terms)


def complement_minor(i: int, j: int, n: int, tag: str = SLNQ) -> NCPolynomial:
    """det_q of the matrix with row ``i`` and column ``j`` deleted."""
    rows = tuple(r for r in range(1, n + 1) if r != i)
    cols = tuple(c for c in range(1, n + 1) if c != j)
    if not rows:
        return NCPolynomial.one(tag, n)
    return quantum_minor(rows, cols, tag, n)


def t_star_expansion(i: int, j: int, n: int) -> NCPolynomial:
    """t_{i,j}^star = (-q)^{j-i} det_q t_{ij} (row i and column j removed)."""
    return complement_minor(i, j, n, SLNQ).scale(minus_q_pow(j - i))


def boundary_ideal_generators(n: int) -> list:
    """The n^2 elements sum_j q^{2n-alpha-beta} z_j^alpha (z_j^beta)^* - delta^{alpha beta}.

    Ordered by (alpha, beta).
    """
    gens = []
    for alpha in range(1, n + 1):
        for beta in range(1, n + 1):
            terms = {}
            for j in range(1, n + 1):
                terms[(z(j, alpha), zs(j, beta))] = LaurentScalar.q_pow(2 * n - alpha - beta)
            if alpha == beta:
                terms[()] = LaurentScalar.const(-1)
            gens.append(NCPolynomial(MATQ, n, terms))
    return gens


def all_generators(n: int, tag: str = MATQ, starred: bool = True) -> list:
    out = []
    for row in range(1, n + 1):
        for col in range(1, n + 1):
            if tag == MATQ:
                out.append(GeneratorSymbol("z", row, col))
                if starred:
                    out.append(GeneratorSymbol("z*", row, col))
            else:
                out.append(GeneratorSymbol("t", row, col))
    return out


def sl_relations(n: int) -> list:
    """Defining relations of C[SL_n]_q as ``(family, polynomial)`` pairs."""
    out = [("t-commutation", rule_polynomial(r, SLNQ, n)) for r in holomorphic_rules(n, SLNQ)]
    out.append(("determinant", q_determinant(n, SLNQ) - NCPolynomial.one(SLNQ, n)))
    return out
