"""Seeded polynomial samples and the truncation slack."""
from __future__ import annotations

import math

import numpy as np

from ..algebra.laurent import LaurentScalar
from ..algebra.poly import MATQ, GeneratorSymbol, NCPolynomial
from ..algebra.rewrite import POL, normal_form, rewrite_system


def sample_polynomial(seed: int, n: int, degree: int, holomorphic_only: bool = False,
                      max_terms: int = 4, safe_degree: int | None = None, reduce: bool = True) -> NCPolynomial:
    """Deterministic pseudo-random element of Pol(Mat_n)_q of the given degree.

    Coefficients are small nonzero integers; one term always has full degree.
    With ``holomorphic_only`` only plain generators are used.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if safe_degree is not None and degree > safe_degree:
        raise ValueError(f"degree {degree} exceeds safe degree {safe_degree}")
    rng = np.random.default_rng(seed)
    if degree == 0:
        c = int(rng.choice([-3, -2, -1, 1, 2, 3]))
        return NCPolynomial.scalar(MATQ, n, c)
    kinds = ("z",) if holomorphic_only else ("z", "z*")
    terms = {}
    count = int(rng.integers(1, max_terms + 1))
    for i in range(count):
        length = degree if i == 0 else int(rng.integers(0, degree + 1))
        word = tuple(GeneratorSymbol(kinds[int(rng.integers(len(kinds)))],
                                     int(rng.integers(1, n + 1)), int(rng.integers(1, n + 1)))
                     for _ in range(length))
        c = int(rng.choice([-3, -2, -1, 1, 2, 3]))
        terms[word] = terms.get(word, LaurentScalar()) + LaurentScalar.const(c)
    p = NCPolynomial(MATQ, n, terms)
    if p.is_zero():
        return sample_polynomial(seed + 7919, n, degree, holomorphic_only, max_terms, safe_degree, reduce)
    if reduce:
        p = normal_form(p, rewrite_system(POL, n))
    return p


def fock_letter_bounds(n: int, q: float) -> dict:
    """Per-letter constants (M, kappa) for the Fock image of each generator.

    M = sum of |coefficients| over the path terms bounds the norm (every
    factor is a contraction); kappa additionally weights each term by the
    number of slots it shifts, which bounds the commutator with a product
    window. Starred letters share the values of their plain partner.
    """
    from ..rep.operators import SHIFT
    from ..rep.paths import path_terms
    out = {}
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            M = kappa = 0.0
            for f, c in path_terms(n, j, k).items():
                a = abs(c.evaluate(q))
                M += a
                kappa += a * sum(1 for kind in f if SHIFT[kind] != 0)
            s = GeneratorSymbol("z", j, k)
            out[s] = out[s.star()] = (M, kappa)
    return out


def truncation_slack(p: NCPolynomial, height: int, q: float | None = None, letter_bounds: dict | None = None) -> float:
    """eps = sqrt(2) pi / (height + 2) * sum_w |c_w| sum_i kappa_i prod_{j != i} M_j.

    A sine-window test vector of support height L moves by at most
    pi / (sqrt(2)(L+2)) under one unit shift, and the Leibniz rule spreads
    this over the letters of each word. Without ``letter_bounds`` every
    letter counts as a single contractive shift (M = kappa = 1), which is
    exact for n = 1; the sum then reduces to deg(w) |c_w|.
    """
    if height < 0:
        return math.inf
    total = 0.0
    for w, c in p.items():
        val = abs(c.evaluate(q)) if q is not None else sum(abs(float(x)) for x in c.terms.values())
        if letter_bounds is None:
            total += len(w) * val
            continue
        bounds = [letter_bounds[s] for s in w]
        acc = 0.0
        for i in range(len(bounds)):
            term = bounds[i][1]
            for j, (M, _) in enumerate(bounds):
                if j != i:
                    term *= M
            acc += term
        total += acc * val
    return math.sqrt(2) * math.pi * total / (height + 2)


def circle_sup(p: NCPolynomial, q: float, points: int = 4096) -> float:
    """max over a uniform grid of |p(e^{i theta})| for a one-variable holomorphic p."""
    if p.n != 1 or not p.is_holomorphic():
        raise ValueError("circle_sup needs a holomorphic polynomial with n = 1")
    theta = 2 * np.pi * np.arange(points) / points
    u = np.exp(1j * theta)
    vals = np.zeros(points, dtype=complex)
    for w, c in p.items():
        vals += c.evaluate(q) * u ** len(w)
    return float(np.abs(vals).max())
