"""*-homomorphisms between the polynomial algebras."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .laurent import ONE, LaurentScalar
from .poly import MATQ, SLNQ, GeneratorSymbol, NCPolynomial, free_star, t, z
from .rewrite import normal_form, rewrite_system, POL, SL

HOM_NAMES = ("PiPhi", "Embed2n", "PhiN", "Theta", "Iota", "PsiJ")


@dataclass(frozen=True)
class HomSpec:
    """Which map, on which source size, with which parameters.

    ``phi`` is only recorded for ``PiPhi``; the image keeps the phase as the
    formal unimodular symbol ``u`` and the angle is substituted numerically.
    """

    name: str
    n: int
    phi: float | None = None
    j: int | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.name not in HOM_NAMES:
            raise ValueError(f"unknown homomorphism {self.name!r}")
        if self.name == "PiPhi":
            if self.phi is None or not (0.0 <= self.phi < 2 * math.pi):
                raise ValueError(f"angle must lie in [0, 2pi), got {self.phi}")
        if self.name == "PsiJ":
            if self.j is None or not (1 <= self.j <= self.n - 1):
                raise ValueError(f"PsiJ needs 1 <= j <= n-1, got j={self.j}, n={self.n}")

    @property
    def source(self):
        return (SLNQ if self.name in ("Theta", "PsiJ") else MATQ, self.n)

    @property
    def target(self):
        n = self.n
        return {
            "PiPhi": (MATQ, n - 1),
            "Embed2n": (MATQ, 2 * n),
            "PhiN": (SLNQ, n),
            "Theta": (SLNQ, n),
            "Iota": (SLNQ, 2 * n),
            "PsiJ": (SLNQ, 2),
        }[self.name]


def _q(e) -> LaurentScalar:
    return LaurentScalar.q_pow(e)


def generator_image(h: HomSpec, s: GeneratorSymbol) -> NCPolynomial:
    """Image of one generator; starred generators map to the star of the plain image."""
    tag, m = h.target
    if s.starred:
        return free_star(generator_image(h, s.star()))
    n = h.n
    if h.name == "PiPhi":
        i, j = s.row, s.col
        if i < n and j < n:
            return NCPolynomial(tag, m, {(z(j, i),): _q(-1)})
        if i == n and j == n:
            return NCPolynomial(tag, m, {(): LaurentScalar.phase(1)})
        return NCPolynomial(tag, m)
    if h.name == "Embed2n":
        return NCPolynomial(tag, m, {(z(s.col + n, s.row + n),): ONE})
    if h.name == "PhiN":
        # z_j^i -> q^{i-n} t_{i,j}
        return NCPolynomial(tag, m, {(t(s.row, s.col),): _q(s.row - n)})
    if h.name == "Iota":
        return NCPolynomial(tag, m, {(t(n + s.row, n + s.col),): _q(s.row - n)})
    if h.name == "Theta":
        i, j = s.row, s.col
        return NCPolynomial(tag, m, {(t(j, i),): _q(j - i)})
    if h.name == "PsiJ":
        a, b, jj = s.row, s.col, h.j
        if jj <= a <= jj + 1 and jj <= b <= jj + 1:
            return NCPolynomial(tag, m, {(t(a - jj + 1, b - jj + 1),): ONE})
        return NCPolynomial.scalar(tag, m, 1 if a == b else 0)
    raise AssertionError(h.name)


def apply_hom(h: HomSpec, p: NCPolynomial, reduce: bool = True) -> NCPolynomial:
    """Extend generator images multiplicatively and linearly, then normal-form in the target."""
    if (p.tag, p.n) != h.source:
        raise ValueError(f"{h.name} expects {h.source}, got ({p.tag}, {p.n})")
    tag, m = h.target
    cache = {}
    out = NCPolynomial(tag, m)
    for w, c in p.items():
        acc = NCPolynomial.scalar(tag, m, c)
        for s in w:
            img = cache.get(s)
            if img is None:
                img = cache[s] = generator_image(h, s)
            acc = acc * img
            if acc.is_zero():
                break
        out = out + acc
    if not reduce:
        return out
    if m == 0:
        return out
    return normal_form(out, rewrite_system(SL if tag == SLNQ else POL, m))


def pi_phi(phi: float, n: int) -> HomSpec:
    return HomSpec("PiPhi", n, phi=phi)
