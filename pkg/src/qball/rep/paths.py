"""Arrow-box path calculus for the Fock generators, plus a brute-force oracle.

The Fock representation is realised on n^2 tensor slots as pi_u o iota,
where iota(z_k^j) = q^{j-n} t_{n+j,n+k} in C[SU_2n]_q and pi_u is the
product of the rank-one representations along the reduced word of u.
Box (r, c) of the n x n tableau (row r counted so that row n is the bottom)
is slot h(r, c) = n(c-1) + n - r + 1 and carries the transposition s_{r+c-1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..algebra.laurent import ONE, ZERO, LaurentScalar
from ..algebra.poly import GeneratorSymbol
from .operators import FactorMatrix, SparseTensorOperator, TruncationConfig

BOX_KINDS = ("right", "up", "up-hook", "right-hook", "empty")
# box kind -> (scalar, factor kind)
BOX_FACTOR = {
    "right": (LaurentScalar.q_pow(1), "Dq"),
    "up": (LaurentScalar.const(-1), "Dq"),
    "up-hook": (ONE, "SstarCq"),
    "right-hook": (ONE, "CqS"),
    "empty": (ONE, "I"),
}


def slot_index(n: int, r: int, c: int) -> int:
    return n * (c - 1) + n - r + 1


def slot_position(n: int, h: int) -> tuple:
    """Inverse of slot_index: (row, column) of slot h."""
    c = (h - 1) // n + 1
    r = n - ((h - 1) % n)
    return r, c


def reduced_word_u(n: int) -> list:
    """Transposition indices of u = c_1 ... c_n with c_k = s_{k+n-1} ... s_k."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return [i for k in range(1, n + 1) for i in range(k + n - 1, k - 1, -1)]


def sigma_factor(i: int, a: int, b: int, size: int | None = None):
    """pi_{s_i}(t_{a,b}) as (LaurentScalar, factor kind), or None when it vanishes."""
    if i < 1 or (size is not None and i > size - 1):
        raise ValueError(f"transposition index {i} out of range for SU_{size}")
    if size is not None and not (1 <= a <= size and 1 <= b <= size):
        raise ValueError(f"entry ({a},{b}) out of range for SU_{size}")
    if a == i and b == i + 1:
        return LaurentScalar.q_pow(1), "Dq"
    if a == i + 1 and b == i:
        return LaurentScalar.const(-1), "Dq"
    if a == b == i:
        return ONE, "SstarCq"
    if a == b == i + 1:
        return ONE, "CqS"
    if a == b:
        return ONE, "I"
    return None


def pi_sigma(sigma: int, gen: GeneratorSymbol, cfg: TruncationConfig, size: int | None = None):
    """Numeric pi_{s_sigma}(t_{a,b}); returns None for the zero operator."""
    if gen.kind != "t":
        raise ValueError("pi_sigma takes a plain t-generator")
    res = sigma_factor(sigma, gen.row, gen.col, size)
    if res is None:
        return None
    c, kind = res
    return FactorMatrix(kind, cfg.N, cfg.q, c.evaluate(cfg.q).real)


def su2_rep(i: int, j: int, cfg: TruncationConfig) -> FactorMatrix:
    """The irreducible representation of C[SU_2]_q on l^2(Z_+)."""
    if i not in (1, 2) or j not in (1, 2):
        raise ValueError(f"bad index t[{i},{j}] for SU_2")
    return pi_sigma(1, GeneratorSymbol("t", i, j), cfg, size=2)


@dataclass(frozen=True)
class PathDiagram:
    """An admissible route from (n, j) to (k, n) with its box kinds per slot."""

    n: int
    start: tuple
    end: tuple
    route: tuple  # ((row, col), box kind) in walking order
    coeff: LaurentScalar

    @property
    def slot_kinds(self) -> tuple:
        kinds = ["empty"] * (self.n * self.n)
        for (r, c), kind in self.route:
            kinds[slot_index(self.n, r, c) - 1] = kind
        return tuple(kinds)

    @property
    def factors(self) -> tuple:
        return tuple(BOX_FACTOR[k][1] for k in self.slot_kinds)

    def count(self, kind: str) -> int:
        return sum(1 for _, k in self.route if k == kind)

    def term(self):
        return self.coeff, self.factors


def _box_kind(entry: str, exit_: str) -> str:
    return {("below", "up"): "up", ("left", "right"): "right",
            ("below", "right"): "right-hook", ("left", "up"): "up-hook"}[(entry, exit_)]


def enumerate_paths(n: int, j: int, k: int) -> list:
    """All monotone routes (up/right moves) from box (n, j) to box (k, n)."""
    if not (1 <= j <= n and 1 <= k <= n):
        raise ValueError(f"need 1 <= j, k <= {n}")
    pref = LaurentScalar.q_pow(j - n)
    out = []

    def walk(r, c, entry, route):
        exits = []
        if r > k:
            exits.append("up")
        if c < n:
            exits.append("right")
        if (r, c) == (k, n):
            exits = ["right"]  # the route leaves the tableau to the right
        for ex in exits:
            kind = _box_kind(entry, ex)
            step = route + (((r, c), kind),)
            if (r, c) == (k, n):
                coeff = pref
                for _, bk in step:
                    coeff = coeff * BOX_FACTOR[bk][0]
                out.append(PathDiagram(n, (n, j), (k, n), step, coeff))
            elif ex == "up":
                walk(r - 1, c, "below", step)
            else:
                walk(r, c + 1, "left", step)

    walk(n, j, "below", ())
    return out


@lru_cache(maxsize=None)
def path_terms(n: int, j: int, k: int) -> dict:
    """Exact form of T(z_k^j): {factor tuple: LaurentScalar}."""
    acc = {}
    for p in enumerate_paths(n, j, k):
        coeff, f = p.term()
        acc[f] = acc.get(f, ZERO) + coeff
    return {f: c for f, c in acc.items() if not c.is_zero()}


_CODE_KIND = {1: "I", 2: "Dq", 3: "Dq", 4: "SstarCq", 5: "CqS"}


def _sigma_table(i: int, size: int) -> np.ndarray:
    """Codes for pi_{s_i}(t_{a,b}): 0 zero, 1 I, 2 q*Dq, 3 -Dq, 4 SstarCq, 5 CqS."""
    tab = np.zeros((size + 1, size + 1), dtype=np.int8)
    for a in range(1, size + 1):
        for b in range(1, size + 1):
            res = sigma_factor(i, a, b, size)
            if res is None:
                continue
            c, kind = res
            if kind == "Dq":
                tab[a, b] = 2 if c == LaurentScalar.q_pow(1) else 3
            else:
                tab[a, b] = {"I": 1, "SstarCq": 4, "CqS": 5}[kind]
    return tab


@lru_cache(maxsize=None)
def brute_force_terms(n: int, j: int, k: int) -> dict:
    """Direct expansion of q^{j-n} sum pi_{s_1}(t_{n+j,k_1}) (x) ... (x) pi(t_{k_{m-1},n+k}).

    Enumerates all (2n)^(n^2-1) index chains with numpy; independent of the
    path enumeration above.
    """
    size = 2 * n
    word = reduced_word_u(n)
    m = n * n
    inner = m - 1
    if inner:
        chains = np.stack(np.unravel_index(np.arange(size ** inner), (size,) * inner), axis=1) + 1
    else:
        chains = np.zeros((1, 0), dtype=np.int64)
    B = chains.shape[0]
    full = np.empty((B, m + 1), dtype=np.int64)
    full[:, 0] = n + j
    full[:, 1:m] = chains
    full[:, m] = n + k
    codes = np.empty((B, m), dtype=np.int8)
    for s in range(m):
        tab = _sigma_table(word[s], size)
        codes[:, s] = tab[full[:, s], full[:, s + 1]]
    codes = codes[(codes != 0).all(axis=1)]
    acc = {}
    for row, count in zip(*np.unique(codes, axis=0, return_counts=True)):
        qe = int((row == 2).sum()) + (j - n)
        sign = -1 if int((row == 3).sum()) % 2 else 1
        f = tuple(_CODE_KIND[int(x)] for x in row)
        acc[f] = acc.get(f, ZERO) + LaurentScalar.q_pow(qe, sign * int(count))
    return {f: c for f, c in acc.items() if not c.is_zero()}


def terms_to_operator(terms: dict, slots: int, cfg: TruncationConfig) -> SparseTensorOperator:
    return SparseTensorOperator(slots, [(c.evaluate(cfg.q), f) for f, c in terms.items()], cfg)


def fock_generator(n: int, j: int, k: int, cfg: TruncationConfig) -> SparseTensorOperator:
    """T(z_k^j) as a sum over admissible paths."""
    return terms_to_operator(path_terms(n, j, k), n * n, cfg)


def brute_force_generator(n: int, j: int, k: int, cfg: TruncationConfig) -> SparseTensorOperator:
    return terms_to_operator(brute_force_terms(n, j, k), n * n, cfg)


def brute_force_dense(n: int, j: int, k: int, cfg: TruncationConfig) -> np.ndarray:
    """Dense oracle by summing Kronecker products of the factor matrices (small n, N)."""
    size = 2 * n
    word = reduced_word_u(n)
    m = n * n
    dim = cfg.N ** m
    if dim > 5000:
        raise MemoryError("dense oracle too large")
    out = np.zeros((dim, dim), dtype=complex)
    pref = cfg.q ** (j - n)

    def rec(pos, a, acc):
        if pos == m:
            return
        targets = [n + k] if pos == m - 1 else range(1, size + 1)
        for b in targets:
            f = pi_sigma(word[pos], GeneratorSymbol("t", a, b), cfg, size)
            if f is None:
                continue
            nxt = np.kron(acc, f.matrix)
            if pos == m - 1:
                out[...] += pref * nxt
            else:
                rec(pos + 1, b, nxt)

    rec(0, n + j, np.ones((1, 1), dtype=complex))
    return out


def diagonal_staircase(n: int, k: int) -> PathDiagram:
    """The route from (n, k) to (k, n) made only of hooks."""
    for p in enumerate_paths(n, k, k):
        if p.count("up") == 0 and p.count("right") == 0:
            return p
    raise AssertionError("no hook-only route")
