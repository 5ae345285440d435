"""Characters, coherent and boundary representations, and finite dilations."""
from __future__ import annotations

import cmath

import numpy as np

from ..algebra.poly import MATQ, NCPolynomial, GeneratorSymbol, z
from ..report import CheckReport, stopwatch
from .fock import FockRepresentation
from .operators import SparseTensorOperator, TruncationConfig, factor_product_matrix
from .paths import sigma_factor, slot_index


def _check_pol(p: NCPolynomial, n: int | None = None):
    if p.tag != MATQ:
        raise ValueError(f"expected an element of Pol(Mat_n)_q, got tag {p.tag}")
    if n is not None and p.n != n:
        raise ValueError(f"expected n={n}, got n={p.n}")


def _eval_poly(p: NCPolynomial, q: float, letter) -> complex:
    total = 0j
    cache = {}
    for w, c in p.items():
        val = c.evaluate(q)
        for s in w:
            x = cache.get(s)
            if x is None:
                x = cache[s] = letter(s)
            val *= x
            if val == 0:
                break
        total += val
    return total


# characters ----------------------------------------------------------------

def character_direct(phis, p: NCPolynomial, q: float) -> complex:
    """chi(z_k^l) = e^{i phi_k} q^{l-n} delta_{kl}, extended as a *-character."""
    _check_pol(p)
    n = p.n
    phis = list(phis)
    if len(phis) != n:
        raise ValueError(f"need {n} angles")

    def letter(s):
        plain = s.star() if s.starred else s
        k, l = plain.col, plain.row
        if k != l:
            return 0j
        v = cmath.exp(1j * phis[k - 1]) * q ** (l - n)
        return v.conjugate() if s.starred else v
    return _eval_poly(p, q, letter)


def tau_angles(phis) -> list:
    """Slot angles tau with Delta_tau o T = chi_phi.

    The hook-only route of z_k^k puts right hooks on the antidiagonal
    r + c = n + k and up hooks on r + c = n + k + 1, so c_k = T_k - T_{k+1}
    where T_k sums tau over the first antidiagonal. Put T_k on box (n, k).
    """
    phis = list(phis)
    n = len(phis)
    tau = [0.0] * (n * n)
    acc = 0.0
    for k in range(n, 0, -1):
        acc += phis[k - 1]
        tau[slot_index(n, n, k) - 1] = acc
    return tau


def character_via_paths(phis, p: NCPolynomial, cfg: TruncationConfig) -> complex:
    """Delta_tau o T(p): evaluate every slot of the Fock image at tau."""
    _check_pol(p)
    tau = tau_angles(phis)
    F = FockRepresentation(p.n, cfg)
    return _eval_poly(p, cfg.q, lambda s: F.letter(s).evaluate_all(tau))


def character_chi(phis, p: NCPolynomial, cfg: TruncationConfig, method: str = "direct") -> complex:
    if method == "direct":
        return character_direct(phis, p, cfg.q)
    if method == "paths":
        return character_via_paths(phis, p, cfg)
    raise ValueError(f"unknown method {method!r}")


# coherent representation ----------------------------------------------------

class CoherentRepresentation:
    """T_psi: evaluate slot n of the Fock representation at e^{i psi}."""

    def __init__(self, n: int, psi: float, cfg: TruncationConfig):
        self.n, self.psi, self.cfg = n, psi, cfg
        self.slots = n * n - 1
        self._fock = FockRepresentation(n, cfg)
        self._letters = {}

    def letter(self, s) -> SparseTensorOperator:
        op = self._letters.get(s)
        if op is None:
            op = self._letters[s] = self._fock.letter(s).evaluate_slot(self.n, self.psi)
        return op

    def operator(self, p: NCPolynomial) -> SparseTensorOperator:
        _check_pol(p, self.n)
        total = SparseTensorOperator(self.slots, (), self.cfg)
        for w, c in p.items():
            acc = SparseTensorOperator.scalar(c.evaluate(self.cfg.q), self.slots, self.cfg)
            for s in w:
                acc = acc @ self.letter(s)
            total = total + acc
        return total


def coherent_rep(psi: float, p: NCPolynomial, cfg: TruncationConfig) -> SparseTensorOperator:
    return CoherentRepresentation(p.n, psi, cfg).operator(p)


def split_A_B(n: int, cfg: TruncationConfig) -> dict:
    """B and A_{jk} with T(z_1^1) = B (x)_n C_qS + A_11 (x)_n I and T(z_k^j) = A_jk (x)_n I.

    Keys: "B" and ("A", j, k). Slot n is kept in place rather than moved last.
    """
    F = FockRepresentation(n, cfg)
    slots = n * n - 1
    pos = n - 1
    out = {}
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            op = F.letter(z(k, j))
            a_terms, b_terms = [], []
            for c, f in op.terms:
                rest = f[:pos] + f[pos + 1:]
                if f[pos] == ():
                    a_terms.append((c, rest))
                elif f[pos] == ("CqS",) and (j, k) == (1, 1):
                    b_terms.append((c, rest))
                else:
                    raise ValueError(f"unexpected factor {f[pos]} at slot {n} in T(z_{k}^{j})")
            out[("A", j, k)] = SparseTensorOperator(slots, a_terms, cfg)
            if (j, k) == (1, 1):
                if len(b_terms) != 1:
                    raise ValueError(f"expected one C_qS term at slot {n}, found {len(b_terms)}")
                out["B"] = SparseTensorOperator(slots, b_terms, cfg)
    return out


def reconstruct_z11(parts: dict, n: int) -> SparseTensorOperator:
    return parts["B"].insert_slot(n, "CqS") + parts[("A", 1, 1)].insert_slot(n, ())


# boundary representations ----------------------------------------------------

def permutation_of_word(word, n: int) -> list:
    perm = list(range(1, n + 1))
    for i in word:
        if not (1 <= i <= n - 1):
            raise ValueError(f"transposition s_{i} not in S_{n}")
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return perm


def is_reduced(word, n: int) -> bool:
    perm = permutation_of_word(word, n)
    inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
    return inv == len(word)


def longest_word(n: int) -> tuple:
    return tuple(i for top in range(n - 1, 0, -1) for i in range(1, top + 1))


def coherent_word(n: int) -> tuple:
    """w = s_{n-1} ... s_1."""
    return tuple(range(n - 1, 0, -1))


def pi_word_terms(word, n: int, a: int, b: int) -> dict:
    """pi_{s_{i_1}} (x) ... (x) pi_{s_{i_m}} (t_{a,b}) as {factors: LaurentScalar}."""
    from ..algebra.laurent import ONE, ZERO
    m = len(word)
    if m == 0:
        return {(): ONE} if a == b else {}
    acc = {}

    def rec(pos, cur, coeff, factors):
        targets = [b] if pos == m - 1 else range(1, n + 1)
        for nxt in targets:
            res = sigma_factor(word[pos], cur, nxt, n)
            if res is None:
                continue
            c, kind = res
            f = factors + (kind,)
            if pos == m - 1:
                acc[f] = acc.get(f, ZERO) + coeff * c
            else:
                rec(pos + 1, nxt, coeff * c, f)

    rec(0, a, ONE, ())
    return {f: c for f, c in acc.items() if not c.is_zero()}


class BoundaryRepresentation:
    """z_l^k -> e^{i phi_k} q^{k-n} pi_word(t_{k,l})."""

    def __init__(self, n: int, phis, word, cfg: TruncationConfig, check_reduced: bool = True):
        phis = list(phis)
        if len(phis) != n:
            raise ValueError(f"need {n} angles")
        word = tuple(word)
        permutation_of_word(word, n)
        if check_reduced and not is_reduced(word, n):
            raise ValueError(f"word {word} is not reduced in S_{n}")
        self.n, self.phis, self.word, self.cfg = n, phis, word, cfg
        self.slots = len(word)
        self._letters = {}

    def t_operator(self, a: int, b: int) -> SparseTensorOperator:
        terms = pi_word_terms(self.word, self.n, a, b)
        return SparseTensorOperator(self.slots, [(c.evaluate(self.cfg.q), f) for f, c in terms.items()], self.cfg)

    def letter(self, s: GeneratorSymbol) -> SparseTensorOperator:
        op = self._letters.get(s)
        if op is None:
            if s.starred:
                op = self.letter(s.star()).adjoint()
            else:
                k, l = s.row, s.col
                c = cmath.exp(1j * self.phis[k - 1]) * self.cfg.q ** (k - self.n)
                op = self.t_operator(k, l).scale(c)
            self._letters[s] = op
        return op

    def operator(self, p: NCPolynomial) -> SparseTensorOperator:
        _check_pol(p, self.n)
        total = SparseTensorOperator(self.slots, (), self.cfg)
        for w, c in p.items():
            acc = SparseTensorOperator.scalar(c.evaluate(self.cfg.q), self.slots, self.cfg)
            for s in w:
                acc = acc @ self.letter(s)
            total = total + acc
        return total

    def unitary_matrix_entries(self) -> dict:
        """(k, l) -> e^{i phi_k} pi_word(t_{k,l})."""
        return {(k, l): self.t_operator(k, l).scale(cmath.exp(1j * self.phis[k - 1]))
                for k in range(1, self.n + 1) for l in range(1, self.n + 1)}


def boundary_rep(phis, word, p: NCPolynomial, cfg: TruncationConfig, check_reduced: bool = True):
    return BoundaryRepresentation(p.n, phis, word, cfg, check_reduced).operator(p)


def isometry_defects(rep: BoundaryRepresentation) -> dict:
    """M M^* - 1 and M^* M - 1 entrywise for M = (e^{i phi_k} pi(t_{k,l}))."""
    n = rep.n
    M = rep.unitary_matrix_entries()
    ident = SparseTensorOperator.identity(rep.slots, rep.cfg)
    out = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            rows = sum((M[(a, l)] @ M[(b, l)].adjoint() for l in range(1, n + 1)),
                       SparseTensorOperator(rep.slots, (), rep.cfg))
            cols = sum((M[(k, a)].adjoint() @ M[(k, b)] for k in range(1, n + 1)),
                       SparseTensorOperator(rep.slots, (), rep.cfg))
            if a == b:
                rows, cols = rows - ident, cols - ident
            out[("MM*", a, b)] = rows
            out[("M*M", a, b)] = cols
    return out


# finite dilation ------------------------------------------------------------

def _defect(T: np.ndarray) -> np.ndarray:
    """(I - T^* T)^{1/2} through a Hermitian eigendecomposition."""
    H = np.eye(T.shape[1]) - T.conj().T @ T
    H = (H + H.conj().T) / 2
    vals, vecs = np.linalg.eigh(H)
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def finite_dilation(T: np.ndarray, steps: int):
    """Unitary U on (steps+1) copies with P U^k P = T^k for 1 <= k <= steps.

    Block layout: first block row [T, 0, ..., D_{T*}], second [D_T, 0, ..., -T*],
    then identities on the subdiagonal. Returns (U, CheckReport).
    """
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError("T must be a square matrix")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    nrm = np.linalg.norm(T, 2) if T.size else 0.0
    if nrm > 1 + 1e-12:
        raise ValueError(f"T is not a contraction (norm {nrm})")
    d = T.shape[0]
    B = steps + 1
    U = np.zeros((B * d, B * d), dtype=complex)

    def blk(r, c, M):
        U[r * d:(r + 1) * d, c * d:(c + 1) * d] = M

    DT = _defect(T)
    DTs = _defect(T.conj().T)
    blk(0, 0, T)
    blk(1, 0, DT)
    blk(0, steps, DTs)
    blk(1, steps, -T.conj().T)
    for r in range(2, B):
        blk(r, r - 1, np.eye(d))
    rep = CheckReport("dilation", {"dim": d, "steps": steps})
    with stopwatch() as ms:
        uni = np.abs(U.conj().T @ U - np.eye(B * d)).max()
    rep.add("unitary", uni, 1e-12, ms=ms[0])
    with stopwatch() as ms:
        worst = 0.0
        Uk = np.eye(B * d, dtype=complex)
        Tk = np.eye(d, dtype=complex)
        for _ in range(steps):
            Uk = Uk @ U
            Tk = Tk @ T
            worst = max(worst, np.abs(Uk[:d, :d] - Tk).max())
    rep.add("compression", worst, 1e-12, ms=ms[0])
    return U, rep


def kron_with_slot(op: SparseTensorOperator, pos: int, M: np.ndarray, cfg: TruncationConfig | None = None) -> np.ndarray:
    """Dense op with an extra slot at 1-based ``pos`` carrying the matrix M."""
    cfg = cfg or op.cfg
    dim = cfg.N ** op.slots * M.shape[0]
    if dim > 20000:
        raise MemoryError("dense assembly too large")
    out = np.zeros((dim, dim), dtype=complex)
    for c, f in op.terms:
        mats = [factor_product_matrix(fac, cfg) for fac in f]
        mats.insert(pos - 1, M)
        m = np.ones((1, 1), dtype=complex)
        for x in mats:
            m = np.kron(m, x)
        out += c * m
    return out


def dilation_compression_check(n: int, cfg: TruncationConfig, steps: int = 4) -> CheckReport:
    """P (B (x) U + A_11 (x) 1)^k P against (B (x) C_qS + A_11 (x) 1)^k for k <= steps."""
    rep = CheckReport("dilation-compression", {"n": n, "q": cfg.q, "N": cfg.N, "steps": steps})
    parts = split_A_B(n, cfg)
    T = factor_product_matrix(("CqS",), cfg)
    U, drep = finite_dilation(T, steps)
    rep.extend(drep, "dilation:")
    with stopwatch() as ms:
        B, A = parts["B"], parts[("A", 1, 1)]
        big = kron_with_slot(B, n, U, cfg) + kron_with_slot(A, n, np.eye(U.shape[0]), cfg)
        small = kron_with_slot(B, n, T, cfg) + kron_with_slot(A, n, np.eye(cfg.N), cfg)
        # embed slot n of l^2 into the first block of the dilation space
        left = cfg.N ** (n - 1)
        right = cfg.N ** (n * n - n)
        D = U.shape[0]
        keep = np.zeros((left, D, right), dtype=bool)
        keep[:, :cfg.N, :] = True
        sel = np.flatnonzero(keep.ravel())
        worst = 0.0
        Pk = np.eye(big.shape[0], dtype=complex)
        Sk = np.eye(small.shape[0], dtype=complex)
        for _ in range(steps):
            Pk = Pk @ big
            Sk = Sk @ small
            worst = max(worst, np.abs(Pk[np.ix_(sel, sel)] - Sk).max())
    rep.add("compressed-powers", worst, 1e-10, ms=ms[0])
    return rep


def phi_grid(n: int, points: int = 8) -> list:
    """Uniform grid of angle vectors, points^n of them."""
    base = [2 * np.pi * i / points for i in range(points)]
    grids = np.meshgrid(*([base] * n), indexing="ij")
    return [list(x) for x in np.stack([g.ravel() for g in grids], axis=1)]
