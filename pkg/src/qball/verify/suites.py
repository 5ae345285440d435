"""Verification suites tying the symbolic and numeric layers together."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from ..algebra.homs import HomSpec, apply_hom
from ..algebra.laurent import LaurentScalar
from ..algebra.poly import MATQ, SLNQ, NCPolynomial, t, z
from ..algebra.relations import boundary_ideal_generators, pol_relations, sl_relations
from ..algebra.rewrite import HOLOMORPHIC, POL, SL, check_confluence, expected_holomorphic_dimension, \
    graded_dimension, rewrite_system
from ..algebra.uq import uq_action, uq_generators
from ..report import CheckReport, stopwatch
from ..rep.fock import FockRepresentation
from ..rep.norms import operator_norm_estimate
from ..rep.operators import SparseTensorOperator, TruncationConfig, factor_product_matrix, leak_free_indices, series_identities_check
from ..rep.paths import brute_force_dense, brute_force_generator, enumerate_paths, fock_generator
from ..rep.reps import (
    BoundaryRepresentation,
    CoherentRepresentation,
    character_direct,
    character_via_paths,
    coherent_word,
    dilation_compression_check,
    finite_dilation,
    isometry_defects,
    longest_word,
    phi_grid,
    reconstruct_z11,
    split_A_B,
)
from .sampling import circle_sup, fock_letter_bounds, sample_polynomial, truncation_slack

SUITES = ("relations", "confluence", "dimensions", "fock-oracle", "vacuum", "basis", "character",
          "coherent", "boundary-ideal", "dilation", "max-modulus", "hopf", "series", "coaction")

DEFAULT_TOL = {
    "relation": 1e-10,
    "oracle": 0.0,
    "vacuum": 0.0,
    "gram": 1e-12,
    "character": 1e-12,
    "coherent": 0.0,
    "boundary": 1e-10,
    "isometry": 1e-10,
    "dilation": 1e-12,
    "compression": 1e-10,
    "maxmod_rel": 0.02,
    "monotone": 1e-9,
}

# n = 1 maximum-modulus ladder
MAXMOD_LADDER = (32, 64, 128, 256)


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    """Everything a suite run depends on.

    ``N`` left as None lets each suite pick its own desk-scale truncation.
    """

    suites: tuple = ("all",)
    n: int = 2
    q: float = 0.5
    N: int | None = None
    safe_degree: int | None = None
    degree: int | None = None
    seed: int = 0
    samples: int | None = None
    tolerances: dict = field(default_factory=dict)
    out: str | None = None

    def validate(self) -> "SuiteConfig":
        sel = tuple(self.suites)
        if not sel:
            raise ConfigError("no suite selected")
        for s in sel:
            if s != "all" and s not in SUITES:
                raise ConfigError(f"unknown suite {s!r}; choose from {', '.join(SUITES)} or all")
        if not isinstance(self.n, int) or not (1 <= self.n <= 3):
            raise ConfigError(f"n must be 1, 2 or 3, got {self.n}")
        if not (0.0 < self.q < 1.0):
            raise ConfigError(f"q must lie in (0, 1), got {self.q}")
        if self.N is not None:
            if self.N < 2:
                raise ConfigError(f"N must be >= 2, got {self.N}")
            if self.safe_degree is not None and not (0 <= self.safe_degree <= self.N - 1):
                raise ConfigError(f"safe_degree must lie in 0..N-1, got {self.safe_degree}")
        elif self.safe_degree is not None and self.safe_degree < 0:
            raise ConfigError("safe_degree must be non-negative")
        if self.degree is not None and self.degree < 0:
            raise ConfigError("degree must be non-negative")
        if self.samples is not None and self.samples < 1:
            raise ConfigError("samples must be >= 1")
        for k, v in self.tolerances.items():
            if k not in DEFAULT_TOL:
                raise ConfigError(f"unknown tolerance key {k!r}; known: {', '.join(DEFAULT_TOL)}")
            if not (v >= 0):
                raise ConfigError(f"tolerance {k} must be non-negative")
        for name in ("max-modulus", "coaction"):
            if name in sel and self.n > 2:
                raise ConfigError(f"{name} runs for n <= 2 only")
        return self

    def selected(self) -> tuple:
        return SUITES if "all" in self.suites else tuple(dict.fromkeys(self.suites))

    def tol(self, key: str) -> float:
        return float(self.tolerances.get(key, DEFAULT_TOL[key]))

    def trunc(self, default: int) -> TruncationConfig:
        N = self.N if self.N is not None else default
        sd = self.safe_degree
        if sd is not None and sd > N - 1:
            sd = N - 1
        return TruncationConfig(self.q, N, sd)

    def sample_degree(self) -> int:
        return self.degree if self.degree is not None else {1: 5, 2: 3, 3: 2}[self.n]

    def echo(self) -> dict:
        return {"n": self.n, "q": self.q, "N": self.N, "safe_degree": self.safe_degree,
                "degree": self.degree, "seed": self.seed, "samples": self.samples,
                "suites": list(self.selected()), "tolerances": dict(self.tolerances)}


def _fock_default(n: int, small: int, big: int) -> int:
    return big if n <= 2 else small


# symbolic suites -------------------------------------------------------------

def relations_suite(cfg: SuiteConfig) -> CheckReport:
    """Defining relations under the Fock representation, per family, on leak-free columns.

    Also checks symbolically that the algebra maps and the U_q action respect
    the relations.
    """
    n = cfg.n
    tc = cfg.trunc(_fock_default(n, 4, 12))
    rep = CheckReport("relations", {"n": n, "q": tc.q, "N": tc.N, "safe_degree": tc.safe_degree})
    F = FockRepresentation(n, tc)
    height = tc.safe_degree - 2
    idx = leak_free_indices(n * n, height)
    worst = {}
    with stopwatch() as ms:
        for fam, r in pol_relations(n):
            res = float(F.operator(r).column_norms(idx).max()) if len(idx) else 0.0
            worst[fam] = max(worst.get(fam, 0.0), res)
    for fam, res in worst.items():
        rep.add(f"fock:{fam}", res, cfg.tol("relation"), ms=ms[0] / len(worst),
                detail=f"{len(idx)} leak-free basis vectors, height <= {height}")

    if n <= 2:
        homs = [HomSpec("PiPhi", n, phi=0.7), HomSpec("Embed2n", n), HomSpec("PhiN", n), HomSpec("Iota", n)]
        for h in homs:
            with stopwatch() as ms:
                bad = sum(1 for _, r in pol_relations(n) if not apply_hom(h, r).is_zero())
            rep.add(f"hom:{h.name}", bad, 0, ms=ms[0], detail="relations not sent to zero")
        for h in [HomSpec("Theta", n)] + [HomSpec("PsiJ", 3, j=j) for j in (1, 2)]:
            with stopwatch() as ms:
                bad = sum(1 for _, r in sl_relations(h.n) if not apply_hom(h, r).is_zero())
            rep.add(f"hom:{h.name}" + (f"[j={h.j}]" if h.j else ""), bad, 0, ms=ms[0])
        with stopwatch() as ms:
            bad = 0
            rels = pol_relations(n)
            for g in uq_generators(n):
                bad += sum(1 for _, r in rels if not uq_action(g, r).is_zero())
        rep.add("uq:well-defined", bad, 0, ms=ms[0], detail="U_q generators applied to every relation")
    return rep


def confluence_suite(cfg: SuiteConfig) -> CheckReport:
    deg = cfg.degree if cfg.degree is not None else 3
    rep = CheckReport("confluence", {"n": cfg.n, "degree": deg})
    for kind in (HOLOMORPHIC, POL, SL):
        if kind == SL and cfg.n == 1:
            continue
        sub = check_confluence(rewrite_system(kind, cfg.n), deg)
        rep.extend(sub, f"{kind}:")
    return rep


def dimensions_suite(cfg: SuiteConfig) -> CheckReport:
    deg = cfg.degree if cfg.degree is not None else 4
    rep = CheckReport("dimensions", {"n": cfg.n, "degree": deg})
    for d in range(deg + 1):
        with stopwatch() as ms:
            got = graded_dimension(HOLOMORPHIC, cfg.n, d)
        want = expected_holomorphic_dimension(cfg.n, d)
        rep.add(f"holomorphic:d={d}", abs(got - want), 0, ms=ms[0], detail=f"{got} normal words, expected {want}")
    return rep


def hopf_suite(cfg: SuiteConfig) -> CheckReport:
    from ..hopf import (antipode, antipode_axiom_residual, coaction_Dn, comultiply, comultiply_leg,
                        counit_leg)
    n = max(cfg.n, 2)
    rep = CheckReport("hopf", {"n": n})
    gens = [NCPolynomial(SLNQ, n, {(t(i, j),): LaurentScalar.const(1)}) for i in range(1, n + 1)
            for j in range(1, n + 1)]
    with stopwatch() as ms:
        bad = 0
        for g in gens:
            d = comultiply(g)
            if comultiply_leg(d, 0) != comultiply_leg(d, 1):
                bad += 1
    rep.add("coassociativity", bad, 0, ms=ms[0])
    with stopwatch() as ms:
        bad = 0
        for g in gens:
            d = comultiply(g)
            for leg in (0, 1):
                if counit_leg(d, leg).leg_polynomial(0) != g:
                    bad += 1
    rep.add("counit", bad, 0, ms=ms[0])
    with stopwatch() as ms:
        bad = sum(1 for g in gens if not antipode_axiom_residual(g).is_zero())
    rep.add("antipode-axiom", bad, 0, ms=ms[0])
    with stopwatch() as ms:
        bad = 0
        for g in gens:
            (w, _), = g.items()
            s = w[0]
            if antipode(antipode(g)) != g.scale(LaurentScalar.q_pow(2 * (s.row - s.col))):
                bad += 1
    rep.add("antipode-squared", bad, 0, ms=ms[0])
    with stopwatch() as ms:
        bad = sum(1 for _, r in pol_relations(n) if not coaction_Dn(r).is_zero())
    rep.add("coaction-relations", bad, 0, ms=ms[0])
    return rep


# Fock layer -----------------------------------------------------------------

def fock_oracle_suite(cfg: SuiteConfig) -> CheckReport:
    """Path calculus against brute-force enumeration of the tensor expansion."""
    n = cfg.n
    tc = cfg.trunc({1: 6, 2: 6, 3: 3}[n])
    rep = CheckReport("fock-oracle", {"n": n, "q": tc.q, "N": tc.N})
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            with stopwatch() as ms:
                a = fock_generator(n, j, k, tc)
                b = brute_force_generator(n, j, k, tc)
                same = a.allclose(b, atol=cfg.tol("oracle"))
            rep.add(f"terms:z[{k},{j}]", 0 if same else 1, 0, ms=ms[0], detail=f"{len(a)} elementary tensors")
            npaths = len(enumerate_paths(n, j, k))
            want = comb(2 * n - j - k, n - j)
            rep.add(f"path-count:z[{k},{j}]", abs(npaths - want), 0, detail=f"{npaths} paths")
            if tc.N ** (n * n) <= 5000:
                with stopwatch() as ms:
                    diff = np.abs(a.to_dense(tc) - brute_force_dense(n, j, k, tc)).max()
                rep.add(f"dense:z[{k},{j}]", diff, cfg.tol("oracle"), ms=ms[0])
    return rep


def vacuum_suite(cfg: SuiteConfig) -> CheckReport:
    n = cfg.n
    tc = cfg.trunc(4)
    rep = CheckReport("vacuum", {"n": n, "q": tc.q, "N": tc.N})
    F = FockRepresentation(n, tc)
    v0 = np.zeros((tc.N,) * (n * n), dtype=complex)
    v0[(0,) * (n * n)] = 1
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            res = np.abs(F.letter(z(k, j).star()).apply(v0, tc)).max()
            rep.add(f"annihilates:z[{k},{j}]*", res, cfg.tol("vacuum"))
    return rep


def _multi_indices(slots: int, total: int):
    if slots == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _multi_indices(slots - 1, total - first):
            yield (first,) + rest


def basis_suite(cfg: SuiteConfig) -> CheckReport:
    """Gram matrix of the monomial vectors X^m v0 for |m| <= degree."""
    from scipy import sparse
    n = cfg.n
    deg = cfg.degree if cfg.degree is not None else 3
    tc = cfg.trunc(max(4, deg + 1))
    if deg > tc.safe_degree:
        raise ConfigError(f"degree {deg} exceeds safe degree {tc.safe_degree}")
    rep = CheckReport("basis", {"n": n, "q": tc.q, "N": tc.N, "degree": deg})
    F = FockRepresentation(n, tc)
    with stopwatch() as ms:
        ms_ = [m for d in range(deg + 1) for m in _multi_indices(n * n, d)]
        # each X^m v0 has tiny support, so keep the vectors sparse
        rows, cols, vals = [], [], []
        for i, m in enumerate(ms_):
            v = F.basis_vector(m).data.ravel()
            nz = np.flatnonzero(v)
            rows += [i] * len(nz)
            cols += nz.tolist()
            vals += v[nz].tolist()
        V = sparse.csr_matrix((vals, (rows, cols)), shape=(len(ms_), tc.N ** (n * n)))
        G = (V.conj() @ V.T).toarray()
        off = np.abs(G - np.diag(np.diag(G))).max() if len(ms_) > 1 else 0.0
        small = float(np.abs(np.diag(G)).min())
    rep.add("gram-offdiagonal", off, cfg.tol("gram"), ms=ms[0], detail=f"{len(ms_)} vectors")
    rep.add("gram-nondegenerate", 0 if small > 0 else 1, 0, detail=f"smallest norm^2 {small:.3e}")
    return rep


def character_suite(cfg: SuiteConfig) -> CheckReport:
    n = cfg.n
    tc = cfg.trunc({1: 64, 2: 6, 3: 3}[n])
    samples = cfg.samples or 100
    deg = min(cfg.sample_degree(), tc.safe_degree)
    rep = CheckReport("character", {"n": n, "q": tc.q, "N": tc.N, "samples": samples, "degree": deg,
                                    "seed": cfg.seed})
    grid = phi_grid(n, 4)
    worst = 0.0
    with stopwatch() as ms:
        for i in range(samples):
            p = sample_polynomial(cfg.seed + i, n, deg)
            phis = grid[i % len(grid)]
            worst = max(worst, abs(character_direct(phis, p, tc.q) - character_via_paths(phis, p, tc)))
    rep.add("direct-vs-paths", worst, cfg.tol("character"), ms=ms[0])
    if n > 2:
        return rep
    F = FockRepresentation(n, tc)
    bounds = fock_letter_bounds(n, tc.q)
    viol, margin = 0, math.inf
    with stopwatch() as ms:
        for i in range(samples):
            p = sample_polynomial(cfg.seed + 1000 + i, n, deg)
            height = tc.safe_degree - p.degree()
            nrm = operator_norm_estimate(F.operator(p), cfg=tc, height=height)
            eps = truncation_slack(p, height, tc.q, bounds)
            chi = max(abs(character_direct(phis, p, tc.q)) for phis in grid)
            margin = min(margin, nrm + eps - chi)
            viol += chi > nrm + eps
    rep.add("domination", viol, 0, ms=ms[0], detail=f"smallest margin {margin:.3e}")
    return rep


def coherent_suite(cfg: SuiteConfig) -> CheckReport:
    n = cfg.n
    tc = cfg.trunc(4)
    rep = CheckReport("coherent", {"n": n, "q": tc.q, "N": tc.N})
    tol = cfg.tol("coherent")
    for psi in (0.0, 0.7, 2.5):
        C = CoherentRepresentation(n, psi, tc)
        slots = n * n - 1
        omega = np.zeros((tc.N,) * slots, dtype=complex)
        omega[(0,) * slots] = 1
        lam = (-1) ** (n - 1) * np.exp(1j * psi)
        res = np.abs(C.letter(z(1, 1)).apply(omega, tc) - lam * omega).max()
        rep.add(f"eigen:z[1,1],psi={psi}", res, tol)
        res = np.abs(C.letter(z(1, 1).star()).apply(omega, tc) - np.conj(lam) * omega).max()
        rep.add(f"eigen:z[1,1]*,psi={psi}", res, tol)
        worst = 0.0
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if (j, k) != (1, 1):
                    worst = max(worst, np.abs(C.letter(z(k, j).star()).apply(omega, tc)).max())
        rep.add(f"annihilates,psi={psi}", worst, tol)
    with stopwatch() as ms:
        parts = split_A_B(n, tc)
        same = reconstruct_z11(parts, n).allclose(FockRepresentation(n, tc).letter(z(1, 1)))
    rep.add("split-reconstruction", 0 if same else 1, 0, ms=ms[0])
    return rep


# boundary ----------------------------------------------------------------------

def boundary_words(n: int) -> list:
    """Words used for boundary representations, with a reduced-ness flag."""
    if n == 1:
        return [((), True)]
    if n == 2:
        # three words; (1, 1) is not reduced but still yields a representation
        return [((), True), ((1,), True), ((1, 1), False)]
    words = [longest_word(n), coherent_word(n), tuple(range(1, n))]
    return [(w, True) for w in dict.fromkeys(words)]


def boundary_ideal_suite(cfg: SuiteConfig) -> CheckReport:
    n = cfg.n
    tc = cfg.trunc(8)
    points = 8 if n <= 2 else 3
    rep = CheckReport("boundary-ideal", {"n": n, "q": tc.q, "N": tc.N, "grid": points})
    gens = boundary_ideal_generators(n)
    grid = phi_grid(n, points)
    height = tc.safe_degree - 2
    for word, reduced in boundary_words(n):
        idx = leak_free_indices(len(word), height)
        worst, iso = 0.0, 0.0
        with stopwatch() as ms:
            for phis in grid:
                B = BoundaryRepresentation(n, phis, word, tc, check_reduced=reduced)
                for g in gens:
                    op = B.operator(g)
                    if len(word) == 0:
                        val = abs(op.as_scalar())
                    else:
                        # Frobenius norm over leak-free columns bounds the restricted operator norm
                        val = float(np.sqrt((op.column_norms(idx) ** 2).sum()))
                    worst = max(worst, val)
            B = BoundaryRepresentation(n, grid[1 % len(grid)], word, tc, check_reduced=reduced)
            for op in isometry_defects(B).values():
                if len(word) == 0:
                    iso = max(iso, abs(op.as_scalar()))
                else:
                    iso = max(iso, float(op.column_norms(leak_free_indices(len(word), tc.safe_degree - 2)).max()))
        label = "".join(map(str, word)) or "e"
        rep.add(f"generators:word={label}", worst, cfg.tol("boundary"), ms=ms[0],
                detail=f"{len(grid)} angle vectors, {len(gens)} generators")
        rep.add(f"unitarity:word={label}", iso, cfg.tol("isometry"))
    return rep


def dilation_suite(cfg: SuiteConfig) -> CheckReport:
    tc = cfg.trunc(8)
    steps = 4
    rep = CheckReport("dilation", {"n": cfg.n, "q": tc.q, "N": tc.N, "steps": steps})
    T = factor_product_matrix(("CqS",), tc)
    _, drep = finite_dilation(T, steps)
    for c in drep.checks:
        rep.add(f"CqS:{c.name}", c.residual, cfg.tol("dilation"), ms=c.ms)
    small = TruncationConfig(tc.q, 3)
    if cfg.n <= 2:
        sub = dilation_compression_check(cfg.n, small, steps)
        for c in sub.checks:
            rep.add(f"fock:{c.name}", c.residual, cfg.tol("compression"), ms=c.ms)
    return rep


def series_suite(cfg: SuiteConfig) -> CheckReport:
    tc = cfg.trunc(8)
    return series_identities_check(tc)


# coaction ------------------------------------------------------------------------

def _tensor(a: SparseTensorOperator, b: SparseTensorOperator, c: complex = 1.0) -> SparseTensorOperator:
    terms = [(c * ca * cb, fa + fb) for ca, fa in a.terms for cb, fb in b.terms]
    return SparseTensorOperator(a.slots + b.slots, terms, a.cfg)


def coaction_image(p: NCPolynomial, theta: float, tc: TruncationConfig) -> SparseTensorOperator:
    """(Fock (x) pi_{s_1} (x) chi_theta) o D_n(p) for holomorphic p.

    pi_{s_1} is the Fock-type representation of C[SU_n]_q from the word (1,)
    and chi_theta sends t_{a,b} to delta_{ab} e^{+-i theta} on the first two
    diagonal entries (1 elsewhere).
    """
    from ..hopf import coaction_Dn
    from ..rep.reps import pi_word_terms
    n = p.n
    if not p.is_holomorphic():
        raise ValueError("coaction check runs on holomorphic samples")
    F = FockRepresentation(n, tc)
    pi_cache, f_cache = {}, {}

    def pi_letter(s):
        op = pi_cache.get(s)
        if op is None:
            terms = pi_word_terms((1,), n, s.row, s.col)
            op = pi_cache[s] = SparseTensorOperator(1, [(c.evaluate(tc.q), f) for f, c in terms.items()], tc)
        return op

    def chi(s):
        if s.row != s.col:
            return 0j
        return np.exp(1j * theta) if s.row == 1 else (np.exp(-1j * theta) if s.row == 2 else 1.0)

    total = SparseTensorOperator(n * n + 1, (), tc)
    for (w0, w1, w2), c in coaction_Dn(p).items():
        scal = c.evaluate(tc.q)
        for s in w2:
            scal *= chi(s)
        if scal == 0:
            continue
        A = f_cache.get(w0)
        if A is None:
            A = f_cache[w0] = F.operator(NCPolynomial.word(MATQ, n, w0))
        B = SparseTensorOperator.identity(1, tc)
        for s in w1:
            B = B @ pi_letter(s)
        total = total + _tensor(A, B, scal)
    return total


def coaction_suite(cfg: SuiteConfig) -> CheckReport:
    """Norm of the coacted image never exceeds the Fock norm (up to slack)."""
    n = max(cfg.n, 2)
    if n > 2:
        raise ConfigError("coaction runs for n = 2 only")
    tc = cfg.trunc(5)
    samples = min(cfg.samples or 10, 50)
    deg = min(cfg.degree if cfg.degree is not None else 2, tc.safe_degree)
    rep = CheckReport("coaction", {"n": n, "q": tc.q, "N": tc.N, "samples": samples, "degree": deg})
    bounds = fock_letter_bounds(n, tc.q)
    viol, margin = 0, math.inf
    with stopwatch() as ms:
        for i in range(samples):
            p = sample_polynomial(cfg.seed + 500 + i, n, deg, holomorphic_only=True)
            height = tc.safe_degree - p.degree()
            f = operator_norm_estimate(FockRepresentation(n, tc).operator(p), cfg=tc, height=height)
            eps = truncation_slack(p, height, tc.q, bounds)
            d = operator_norm_estimate(coaction_image(p, 0.9, tc), cfg=tc, height=height)
            margin = min(margin, f + eps - d)
            viol += d > f + eps
    rep.add("domination", viol, 0, ms=ms[0], detail=f"smallest margin {margin:.3e}")
    return rep


# maximum modulus ---------------------------------------------------------------

def _boundary_sup(p: NCPolynomial, grid, words, tc: TruncationConfig) -> float:
    best = 0.0
    for word, reduced in words:
        height = tc.safe_degree - p.degree()
        for phis in grid:
            op = BoundaryRepresentation(p.n, phis, word, tc, check_reduced=reduced).operator(p)
            val = abs(op.as_scalar()) if not word else operator_norm_estimate(op, cfg=tc, height=height)
            best = max(best, val)
    return best


def max_modulus_check(cfg: SuiteConfig, samples: int | None = None) -> CheckReport:
    """Boundary norms against Fock norms on holomorphic samples.

    For n = 1 the Fock norm is computed on the ladder N = 32..256 and the
    boundary side is the circle supremum; for n = 2 the boundary side runs
    over an angle grid and the words e, w0 and s_1.
    """
    n = cfg.n
    if n > 2:
        raise ConfigError("max-modulus runs for n <= 2 only")
    samples = samples or cfg.samples or (20 if n == 1 else 50)
    if samples < 1:
        raise ConfigError("samples must be >= 1")
    deg = cfg.sample_degree()
    rep = CheckReport("max-modulus", {"n": n, "q": cfg.q, "samples": samples, "degree": deg, "seed": cfg.seed})
    if n == 1:
        ladder = (cfg.N,) if cfg.N is not None else MAXMOD_LADDER
        viol, worst_rel, worst_mono = 0, 0.0, 0.0
        with stopwatch() as ms:
            for i in range(samples):
                p = sample_polynomial(cfg.seed + i, 1, deg, holomorphic_only=True)
                bdd = circle_sup(p, cfg.q)
                prev = None
                for N in ladder:
                    tc = TruncationConfig(cfg.q, N)
                    height = tc.safe_degree - p.degree()
                    F = operator_norm_estimate(FockRepresentation(1, tc).operator(p), cfg=tc, height=height)
                    if bdd > F + truncation_slack(p, height, cfg.q):
                        viol += 1
                    deficit = bdd - F
                    if prev is not None:
                        worst_mono = max(worst_mono, deficit - prev)
                    prev = deficit
                worst_rel = max(worst_rel, abs(bdd - F) / bdd)
        rep.add("one-sided", viol, 0, ms=ms[0], detail="boundary <= Fock + eps")
        rep.add(f"relative-gap:N={ladder[-1]}", worst_rel, cfg.tol("maxmod_rel"))
        if len(ladder) > 1:
            rep.add("deficit-monotone", worst_mono, cfg.tol("monotone"),
                    detail="largest increase of boundary - Fock along " + ",".join(map(str, ladder)))
        return rep

    fock_tc = TruncationConfig(cfg.q, cfg.N if cfg.N is not None else 6)
    bnd_tc = TruncationConfig(cfg.q, 48)
    deg = min(deg, fock_tc.safe_degree)
    F = FockRepresentation(n, fock_tc)
    words = [((), True), (longest_word(n), True)]
    if coherent_word(n) != longest_word(n):
        words.append((coherent_word(n), True))
    grid = phi_grid(n, 8)
    bounds = fock_letter_bounds(n, cfg.q)
    viol, worst_def, margin = 0, -math.inf, math.inf
    with stopwatch() as ms:
        for i in range(samples):
            p = sample_polynomial(cfg.seed + i, n, deg, holomorphic_only=True)
            height = fock_tc.safe_degree - p.degree()
            f = operator_norm_estimate(F.operator(p), cfg=fock_tc, height=height)
            b = _boundary_sup(p, grid, words, bnd_tc)
            eps = truncation_slack(p, height, cfg.q, bounds)
            viol += b > f + eps
            worst_def = max(worst_def, b - f)
            margin = min(margin, f + eps - b)
    rep.add("one-sided", viol, 0, ms=ms[0],
            detail=f"largest boundary - Fock {worst_def:.3e}, smallest margin {margin:.3e}")
    if cfg.N is None:
        # the deficit must shrink as the leak-free window grows
        ladder = (4, 6, 8)
        worst_mono, last = 0.0, []
        with stopwatch() as ms:
            for i in range(min(samples, 8)):
                p = sample_polynomial(cfg.seed + i, n, min(deg, 3), holomorphic_only=True)
                b = _boundary_sup(p, grid, words, bnd_tc)
                prev = None
                for N in ladder:
                    tc = TruncationConfig(cfg.q, N)
                    f = operator_norm_estimate(FockRepresentation(n, tc).operator(p), cfg=tc,
                                               height=tc.safe_degree - p.degree())
                    if prev is not None:
                        worst_mono = max(worst_mono, (b - f) - prev)
                    prev = b - f
                last.append(prev / b)
        rep.add("deficit-monotone", worst_mono, cfg.tol("monotone"), ms=ms[0],
                detail=f"N={','.join(map(str, ladder))}; largest relative deficit at N={ladder[-1]}: {max(last):.3f}")
    return rep


def max_modulus_suite(cfg: SuiteConfig) -> CheckReport:
    return max_modulus_check(cfg)


RUNNERS = {
    "relations": relations_suite,
    "confluence": confluence_suite,
    "dimensions": dimensions_suite,
    "fock-oracle": fock_oracle_suite,
    "vacuum": vacuum_suite,
    "basis": basis_suite,
    "character": character_suite,
    "coherent": coherent_suite,
    "boundary-ideal": boundary_ideal_suite,
    "dilation": dilation_suite,
    "max-modulus": max_modulus_suite,
    "hopf": hopf_suite,
    "series": series_suite,
    "coaction": coaction_suite,
}


def thread_count() -> int:
    """Worker threads for independent suites, from QBALL_THREADS (default 1)."""
    raw = os.environ.get("QBALL_THREADS", "1")
    try:
        val = int(raw)
    except ValueError:
        raise ConfigError(f"QBALL_THREADS must be an integer, got {raw!r}") from None
    if val < 1:
        raise ConfigError("QBALL_THREADS must be >= 1")
    return val


def run_suite(cfg: SuiteConfig) -> CheckReport:
    """Run the selected suites and merge them into one report.

    The configuration is validated before anything is computed. When
    ``cfg.out`` is set the JSON report is written there.
    """
    cfg.validate()
    thread_count()
    sel = cfg.selected()
    if cfg.n > 2:
        sel = tuple(s for s in sel if s not in ("max-modulus", "coaction"))
    total = CheckReport("+".join(sel), cfg.echo())

    def timed(name):
        with stopwatch() as ms:
            sub = RUNNERS[name](cfg)
        return sub, ms[0]

    threads = thread_count()
    if threads > 1 and len(sel) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(timed, sel))
    else:
        results = [timed(name) for name in sel]
    # merged in selection order so the report does not depend on scheduling
    for name, (sub, ms) in zip(sel, results):
        total.extend(sub, f"{name}:")
        total.config.setdefault("ms", {})[name] = round(ms, 1)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(total.dumps())
            fh.write("\n")
    return total


__all__ = ["SuiteConfig", "ConfigError", "SUITES", "DEFAULT_TOL", "run_suite", "max_modulus_check",
           "boundary_words", "RUNNERS"]
