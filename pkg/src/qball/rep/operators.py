"""Truncated weighted shifts on l^2(Z_+) and sums of their tensor products.

Every factor used here maps e_m to w(m) e_{m+s} with s in {-1, 0, 1}, so an
elementary tensor sends a basis vector to a multiple of another basis
vector. That makes exact column-by-column checks cheap: act on a batch of
multi-indices, group the outputs by their total shift, and sum.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

FACTOR_KINDS = ("I", "S", "Sstar", "Cq", "Dq", "CqS", "SstarCq")
SHIFT = {"I": 0, "S": 1, "Sstar": -1, "Cq": 0, "Dq": 0, "CqS": 1, "SstarCq": -1}
ADJOINT = {"I": "I", "S": "Sstar", "Sstar": "S", "Cq": "Cq", "Dq": "Dq", "CqS": "SstarCq", "SstarCq": "CqS"}


class LeakError(ValueError):
    """Raised when an action could reach the truncation edge."""


@dataclass(frozen=True)
class TruncationConfig:
    q: float
    N: int
    safe_degree: int | None = None

    def __post_init__(self):
        if not (0.0 < self.q < 1.0):
            raise ValueError(f"q must lie in (0, 1), got {self.q}")
        if int(self.N) != self.N or self.N < 2:
            raise ValueError(f"truncation N must be an integer >= 2, got {self.N}")
        if self.safe_degree is None:
            object.__setattr__(self, "safe_degree", self.N - 1)
        if not (0 <= self.safe_degree <= self.N - 1):
            raise ValueError(f"safe_degree must lie in 0..N-1, got {self.safe_degree}")


@lru_cache(maxsize=None)
def _weights_cached(kind: str, N: int, q: float) -> np.ndarray:
    m = np.arange(N, dtype=float)
    if kind == "I":
        w = np.ones(N)
    elif kind == "Dq":
        w = q ** m
    elif kind == "Cq":
        w = np.sqrt(1.0 - q ** (2 * m))
    elif kind == "S":
        w = np.ones(N)
        w[-1] = 0.0
    elif kind == "Sstar":
        w = np.ones(N)
        w[0] = 0.0
    elif kind == "CqS":
        w = np.sqrt(1.0 - q ** (2 * m + 2))
        w[-1] = 0.0
    elif kind == "SstarCq":
        w = np.sqrt(1.0 - q ** (2 * m))
    else:
        raise ValueError(f"unknown factor kind {kind!r}")
    w.setflags(write=False)
    return w


def factor_weights(kind: str, N: int, q: float) -> np.ndarray:
    """w with kind(e_m) = w[m] e_{m + SHIFT[kind]} (zero where the target leaves 0..N-1)."""
    return _weights_cached(kind, int(N), float(q))


class FactorMatrix:
    """A scalar multiple of one of the basic truncated operators."""

    __slots__ = ("kind", "N", "q", "scale")

    def __init__(self, kind: str, N: int, q: float, scale: complex = 1.0):
        if kind not in FACTOR_KINDS:
            raise ValueError(f"unknown factor kind {kind!r}")
        self.kind, self.N, self.q, self.scale = kind, int(N), float(q), scale

    @property
    def shift(self) -> int:
        return SHIFT[self.kind]

    @property
    def weights(self) -> np.ndarray:
        return self.scale * factor_weights(self.kind, self.N, self.q)

    @property
    def matrix(self) -> np.ndarray:
        out = np.zeros((self.N, self.N), dtype=complex)
        w = self.weights
        for m in range(self.N):
            r = m + self.shift
            if 0 <= r < self.N:
                out[r, m] = w[m]
        return out

    def adjoint(self) -> "FactorMatrix":
        return FactorMatrix(ADJOINT[self.kind], self.N, self.q, np.conj(self.scale))

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    def __repr__(self):
        s = "" if self.scale == 1 else f"{self.scale}*"
        return f"FactorMatrix({s}{self.kind}, N={self.N}, q={self.q})"


def basic_operators(cfg: TruncationConfig) -> dict:
    """S, Cq, Dq (and the composite factors) at truncation cfg.N."""
    return {k: FactorMatrix(k, cfg.N, cfg.q) for k in FACTOR_KINDS}


def _norm_factor(f) -> tuple:
    if isinstance(f, str):
        f = (f,)
    out = tuple(k for k in f if k != "I")
    for k in out:
        if k not in FACTOR_KINDS:
            raise ValueError(f"unknown factor kind {k!r}")
    return out


def _apply_axis(v: np.ndarray, kind: str, axis: int, N: int, q: float) -> np.ndarray:
    w = factor_weights(kind, N, q)
    shape = [1] * v.ndim
    shape[axis] = N
    v = v * w.reshape(shape)
    sh = SHIFT[kind]
    if sh == 0:
        return v
    out = np.zeros_like(v)
    src = [slice(None)] * v.ndim
    dst = [slice(None)] * v.ndim
    if sh == 1:
        src[axis], dst[axis] = slice(0, N - 1), slice(1, N)
    else:
        src[axis], dst[axis] = slice(1, N), slice(0, N - 1)
    out[tuple(dst)] = v[tuple(src)]
    return out


class SparseTensorOperator:
    """sum_t c_t F_t^1 (x) ... (x) F_t^m on (C^N)^{(x) m}.

    Each slot factor is a tuple of factor kinds read as an operator product
    (rightmost acts first); the empty tuple is the identity. Terms with the
    same factors are merged on construction. Instances are immutable.
    """

    __slots__ = ("slots", "cfg", "_terms")

    def __init__(self, slots: int, terms: Iterable = (), cfg: TruncationConfig | None = None):
        self.slots = int(slots)
        self.cfg = cfg
        acc = {}
        for c, factors in terms:
            factors = tuple(_norm_factor(f) for f in factors)
            if len(factors) != self.slots:
                raise ValueError(f"term has {len(factors)} slots, operator has {self.slots}")
            acc[factors] = acc.get(factors, 0j) + complex(c)
        self._terms = tuple((c, f) for f, c in acc.items() if c != 0)

    # construction ---------------------------------------------------------
    @classmethod
    def scalar(cls, c, slots: int, cfg=None) -> "SparseTensorOperator":
        return cls(slots, [(c, ((),) * slots)], cfg)

    @classmethod
    def identity(cls, slots: int, cfg=None) -> "SparseTensorOperator":
        return cls.scalar(1.0, slots, cfg)

    @property
    def terms(self) -> tuple:
        return self._terms

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _cfg_of(self, other):
        return self.cfg if self.cfg is not None else getattr(other, "cfg", None)

    def __add__(self, other):
        if not isinstance(other, SparseTensorOperator):
            other = SparseTensorOperator.scalar(other, self.slots, self.cfg)
        if other.slots != self.slots:
            raise ValueError("slot count mismatch")
        return SparseTensorOperator(self.slots, self._terms + other._terms, self._cfg_of(other))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1.0)

    def __sub__(self, other):
        return self + (-other if isinstance(other, SparseTensorOperator) else -complex(other))

    def scale(self, c) -> "SparseTensorOperator":
        c = complex(c)
        return SparseTensorOperator(self.slots, [(c * a, f) for a, f in self._terms], self.cfg)

    def __mul__(self, c):
        if isinstance(c, SparseTensorOperator):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other: "SparseTensorOperator") -> "SparseTensorOperator":
        """Composition self o other."""
        if other.slots != self.slots:
            raise ValueError("slot count mismatch")
        terms = []
        for a, f in self._terms:
            for b, g in other._terms:
                terms.append((a * b, tuple(x + y for x, y in zip(f, g))))
        return SparseTensorOperator(self.slots, terms, self._cfg_of(other))

    def adjoint(self) -> "SparseTensorOperator":
        terms = [(np.conj(c), tuple(tuple(ADJOINT[k] for k in reversed(fac)) for fac in f))
                 for c, f in self._terms]
        return SparseTensorOperator(self.slots, terms, self.cfg)

    def with_cfg(self, cfg: TruncationConfig) -> "SparseTensorOperator":
        out = SparseTensorOperator.__new__(SparseTensorOperator)
        out.slots, out.cfg, out._terms = self.slots, cfg, self._terms
        return out

    def raise_bound(self) -> int:
        """Largest number of raising factors any term puts on a single slot."""
        best = 0
        for _, f in self._terms:
            for fac in f:
                best = max(best, sum(1 for k in fac if SHIFT[k] > 0))
        return best

    def as_scalar(self) -> complex:
        if self.slots != 0:
            raise ValueError("operator still has slots")
        return sum((c for c, _ in self._terms), 0j)

    def _need_cfg(self, cfg):
        cfg = cfg or self.cfg
        if cfg is None:
            raise ValueError("a TruncationConfig is needed for numeric action")
        return cfg

    # numeric action -------------------------------------------------------
    def apply(self, v: np.ndarray, cfg: TruncationConfig | None = None) -> np.ndarray:
        """Matrix-free action on a dense coefficient tensor of shape (N,)*slots."""
        cfg = self._need_cfg(cfg)
        v = np.asarray(v, dtype=complex)
        if v.shape != (cfg.N,) * self.slots:
            raise ValueError(f"vector shape {v.shape} does not match {self.slots} slots at N={cfg.N}")
        out = np.zeros_like(v)
        for c, f in self._terms:
            w = v
            for axis, fac in enumerate(f):
                for kind in reversed(fac):
                    w = _apply_axis(w, kind, axis, cfg.N, cfg.q)
            out += c * w
        return out

    def basis_action(self, idx: np.ndarray, cfg: TruncationConfig | None = None) -> dict:
        """Images of the basis vectors e_idx[b], grouped by total shift.

        Returns {shift tuple: coefficient array of length B}; the image of
        e_m is sum_s coeff_s[b] e_{m + s}.
        """
        cfg = self._need_cfg(cfg)
        idx = np.asarray(idx, dtype=np.int64).reshape(-1, self.slots)
        out = {}
        for c, f in self._terms:
            coef = np.full(idx.shape[0], c, dtype=complex)
            shift = []
            for axis, fac in enumerate(f):
                cur = idx[:, axis].copy()
                for kind in reversed(fac):
                    coef *= factor_weights(kind, cfg.N, cfg.q)[cur]
                    cur = np.clip(cur + SHIFT[kind], 0, cfg.N - 1)
                shift.append(sum(SHIFT[k] for k in fac))
            key = tuple(shift)
            if key in out:
                out[key] = out[key] + coef
            else:
                out[key] = coef
        return out

    def column_norms(self, idx: np.ndarray, cfg: TruncationConfig | None = None) -> np.ndarray:
        """||A e_m|| for each multi-index row m of idx."""
        idx = np.asarray(idx, dtype=np.int64).reshape(-1, self.slots)
        total = np.zeros(idx.shape[0])
        for coef in self.basis_action(idx, cfg).values():
            total += np.abs(coef) ** 2
        return np.sqrt(total)

    def to_dense(self, cfg: TruncationConfig | None = None) -> np.ndarray:
        """Dense N^m x N^m matrix (small cases only)."""
        cfg = self._need_cfg(cfg)
        dim = cfg.N ** self.slots
        if dim > 5000:
            raise MemoryError(f"refusing to materialize a {dim}x{dim} matrix")
        out = np.zeros((dim, dim), dtype=complex)
        for c, f in self._terms:
            m = np.ones((1, 1), dtype=complex)
            for fac in f:
                m = np.kron(m, factor_product_matrix(fac, cfg))
            out += c * m
        return out

    # evaluation of a slot through S -> e^{i angle} -----------------------
    def evaluate_slot(self, slot: int, angle: float) -> "SparseTensorOperator":
        """Replace slot ``slot`` (1-based) by its symbol at e^{i angle}; d(q) maps to 0."""
        if not (1 <= slot <= self.slots):
            raise ValueError(f"slot {slot} out of range 1..{self.slots}")
        pos = slot - 1
        terms = []
        for c, f in self._terms:
            val = c * symbol_value(f[pos], angle)
            if val != 0:
                terms.append((val, f[:pos] + f[pos + 1:]))
        return SparseTensorOperator(self.slots - 1, terms, self.cfg)

    def evaluate_all(self, angles) -> complex:
        """Apply slot evaluation at every slot; a scalar."""
        angles = list(angles)
        if len(angles) != self.slots:
            raise ValueError("need one angle per slot")
        total = 0j
        for c, f in self._terms:
            val = c
            for fac, a in zip(f, angles):
                val *= symbol_value(fac, a)
                if val == 0:
                    break
            total += val
        return total

    def insert_slot(self, pos: int, factor=()) -> "SparseTensorOperator":
        """Operator on slots+1 slots with ``factor`` placed at 1-based position ``pos``."""
        fac = _norm_factor(factor)
        p = pos - 1
        terms = [(c, f[:p] + (fac,) + f[p:]) for c, f in self._terms]
        return SparseTensorOperator(self.slots + 1, terms, self.cfg)

    # comparison and io ----------------------------------------------------
    def term_dict(self) -> dict:
        return {f: c for c, f in self._terms}

    def allclose(self, other: "SparseTensorOperator", atol: float = 0.0) -> bool:
        a, b = self.term_dict(), other.term_dict()
        for k in set(a) | set(b):
            if abs(a.get(k, 0) - b.get(k, 0)) > atol:
                return False
        return self.slots == other.slots

    def to_json(self) -> dict:
        return {
            "slots": self.slots,
            "N": None if self.cfg is None else self.cfg.N,
            "q": None if self.cfg is None else self.cfg.q,
            "terms": [{"coeff": [c.real, c.imag], "factors": [list(fac) for fac in f]} for c, f in self._terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SparseTensorOperator":
        cfg = None
        if data.get("N") is not None:
            cfg = TruncationConfig(float(data["q"]), int(data["N"]))
        terms = [(complex(*t["coeff"]), tuple(tuple(x) for x in t["factors"])) for t in data["terms"]]
        return cls(int(data["slots"]), terms, cfg)

    def __repr__(self):
        return f"SparseTensorOperator(slots={self.slots}, terms={len(self._terms)})"


def factor_product_matrix(fac, cfg: TruncationConfig) -> np.ndarray:
    m = np.eye(cfg.N, dtype=complex)
    for kind in fac:
        m = m @ FactorMatrix(kind, cfg.N, cfg.q).matrix
    return m


def symbol_value(fac, angle: float) -> complex:
    """Image of a product of factors under S -> e^{i angle}, d(q) -> 0, C_q -> 1."""
    val = 1.0 + 0j
    for kind in _norm_factor(fac):
        if kind == "Dq":
            return 0j
        sh = SHIFT[kind]
        if sh:
            val *= cmath.exp(1j * sh * angle)
    return val


# basis helpers ------------------------------------------------------------

def leak_free_indices(slots: int, height: int) -> np.ndarray:
    """All multi-indices with every entry in 0..height, as a (B, slots) array."""
    if height < 0:
        return np.zeros((0, slots), dtype=np.int64)
    if slots == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((height + 1,) * slots).reshape(slots, -1).T
    return grids.astype(np.int64)


def support_height(v: np.ndarray, atol: float = 0.0) -> int:
    """Largest single-slot index carrying a nonzero coefficient (-1 for the zero vector)."""
    nz = np.argwhere(np.abs(v) > atol)
    if nz.size == 0:
        return -1
    return int(nz.max())


def basis_vector(multi_index, cfg: TruncationConfig) -> np.ndarray:
    slots = len(multi_index)
    v = np.zeros((cfg.N,) * slots, dtype=complex)
    if any(not (0 <= m < cfg.N) for m in multi_index):
        raise LeakError(f"multi-index {tuple(multi_index)} outside truncation N={cfg.N}")
    v[tuple(multi_index)] = 1.0
    return v


def height_mask(slots: int, height: int, N: int) -> np.ndarray:
    """Boolean tensor selecting basis vectors with all entries <= height."""
    ok = np.arange(N) <= height
    mask = np.ones((N,) * slots, dtype=bool)
    for axis in range(slots):
        shape = [1] * slots
        shape[axis] = N
        mask = mask & ok.reshape(shape)
    return mask


def series_identities_check(cfg: TruncationConfig, terms: int | None = None):
    """Partial sums of the C*(S) series for C_q and d(q) against the closed forms.

    C_q = (1-q^2)^{1/2} (sum_k q^{2k} S^{k+1} S^{*(k+1)})^{1/2} and
    d(q) = sum_k q^k (S^k S^{*k} - S^{k+1} S^{*(k+1)}), truncated after ``terms``.
    Tolerances are the geometric tails q^{2K}/(1-q^2) and q^K.
    """
    from ..report import CheckReport, stopwatch

    K = cfg.N if terms is None else int(terms)
    q, N = cfg.q, cfg.N
    S = FactorMatrix("S", N, q).matrix
    Ss = S.conj().T
    proj = [np.eye(N, dtype=complex)]
    for _ in range(K + 1):
        proj.append(S @ proj[-1] @ Ss)
    rep = CheckReport("series", {"q": q, "N": N, "terms": K})
    with stopwatch() as ms:
        inner = sum((q ** (2 * k) * proj[k + 1] for k in range(K)), np.zeros((N, N), dtype=complex))
        vals, vecs = np.linalg.eigh((inner + inner.conj().T) / 2)
        root = (vecs * np.sqrt(np.clip(vals, 0, None))) @ vecs.conj().T
        cq = np.sqrt(1 - q * q) * root
        res1 = np.linalg.norm(cq - FactorMatrix("Cq", N, q).matrix, 2)
    rep.add("Cq-series", res1, max(q ** (2 * K) / (1 - q * q), 1e-14), ms=ms[0])
    with stopwatch() as ms:
        dq = sum((q ** k * (proj[k] - proj[k + 1]) for k in range(K)), np.zeros((N, N), dtype=complex))
        res2 = np.linalg.norm(dq - FactorMatrix("Dq", N, q).matrix, 2)
    rep.add("Dq-series", res2, max(q ** K, 1e-14), ms=ms[0])
    with stopwatch() as ms:
        ident = FactorMatrix("Cq", N, q).matrix.conj().T @ FactorMatrix("Cq", N, q).matrix \
            + FactorMatrix("Dq", N, q).matrix.conj().T @ FactorMatrix("Dq", N, q).matrix
        res3 = np.abs(ident - np.eye(N)).max()
    rep.add("Cq*Cq+d*d=I", res3, 1e-15, ms=ms[0])
    return rep
