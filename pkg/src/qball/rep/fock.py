"""The Fock representation on n^2 truncated slots."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..algebra.poly import MATQ, NCPolynomial
from .operators import (
    LeakError,
    SparseTensorOperator,
    TruncationConfig,
    basis_vector,
    support_height,
)
from .paths import fock_generator, slot_position


@dataclass(frozen=True)
class FockVector:
    """Coefficient tensor over e_{i_1} (x) ... (x) e_{i_m}."""

    data: np.ndarray
    cfg: TruncationConfig

    @property
    def slots(self) -> int:
        return self.data.ndim

    @classmethod
    def vacuum(cls, slots: int, cfg: TruncationConfig) -> "FockVector":
        return cls(basis_vector((0,) * slots, cfg), cfg)

    @classmethod
    def basis(cls, multi_index, cfg: TruncationConfig) -> "FockVector":
        return cls(basis_vector(tuple(multi_index), cfg), cfg)

    def height(self, atol: float = 0.0) -> int:
        return support_height(self.data, atol)

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def inner(self, other: "FockVector") -> complex:
        """<self, other>, linear in the second argument."""
        return complex(np.vdot(self.data, other.data))

    def __add__(self, other):
        return FockVector(self.data + other.data, self.cfg)

    def __sub__(self, other):
        return FockVector(self.data - other.data, self.cfg)

    def scale(self, c):
        return FockVector(self.data * c, self.cfg)

    def to_json(self) -> dict:
        nz = np.argwhere(self.data != 0)
        return {"slots": self.slots, "N": self.cfg.N, "q": self.cfg.q,
                "entries": [{"index": [int(i) for i in ix],
                             "value": [float(self.data[tuple(ix)].real), float(self.data[tuple(ix)].imag)]}
                            for ix in nz]}

    @classmethod
    def from_json(cls, data: dict) -> "FockVector":
        cfg = TruncationConfig(float(data["q"]), int(data["N"]))
        v = np.zeros((cfg.N,) * int(data["slots"]), dtype=complex)
        for e in data["entries"]:
            v[tuple(e["index"])] = complex(*e["value"])
        return cls(v, cfg)


class FockRepresentation:
    """T = pi_u o iota for Pol(Mat_n)_q at a fixed truncation.

    Letter operators are built once; polynomial images are assembled by
    composing them, which keeps everything as sums of elementary tensors.
    """

    def __init__(self, n: int, cfg: TruncationConfig):
        self.n, self.cfg = n, cfg
        self.slots = n * n
        self._letters = {}

    def letter(self, s) -> SparseTensorOperator:
        op = self._letters.get(s)
        if op is None:
            if s.kind not in ("z", "z*"):
                raise ValueError(f"Fock representation acts on z-letters, got {s}")
            if not (1 <= s.row <= self.n and 1 <= s.col <= self.n):
                raise ValueError(f"letter {s} out of range for n={self.n}")
            if s.starred:
                op = self.letter(s.star()).adjoint()
            else:
                # z_k^j with upper j = row and lower k = col
                op = fock_generator(self.n, s.row, s.col, self.cfg)
            self._letters[s] = op
        return op

    def operator(self, p: NCPolynomial) -> SparseTensorOperator:
        self._check(p)
        total = SparseTensorOperator(self.slots, (), self.cfg)
        for w, c in p.items():
            acc = SparseTensorOperator.scalar(c.evaluate(self.cfg.q), self.slots, self.cfg)
            for s in w:
                acc = acc @ self.letter(s)
            total = total + acc
        return total

    def word_apply(self, word, v: np.ndarray) -> np.ndarray:
        for s in reversed(word):
            v = self.letter(s).apply(v, self.cfg)
        return v

    def apply(self, p: NCPolynomial, v: FockVector, check_leak: bool = True) -> FockVector:
        self._check(p)
        if v.slots != self.slots:
            raise ValueError(f"vector has {v.slots} slots, need {self.slots}")
        if check_leak:
            h = v.height()
            if h + p.degree() > self.cfg.safe_degree:
                raise LeakError(
                    f"degree {p.degree()} on support height {h} exceeds safe degree {self.cfg.safe_degree}"
                    f" (N={self.cfg.N}); raise N or lower the degree")
        out = np.zeros_like(v.data)
        for w, c in p.items():
            out += c.evaluate(self.cfg.q) * self.word_apply(w, v.data)
        return FockVector(out, self.cfg)

    def _check(self, p: NCPolynomial):
        if p.tag != MATQ or p.n != self.n:
            raise ValueError(f"expected Pol(Mat_{self.n})_q, got ({p.tag}, {p.n})")
        if any(c.has_phase() for _, c in p.items()):
            raise ValueError("polynomial carries a formal phase; substitute it first")

    def generator_for_slot(self, h: int) -> SparseTensorOperator:
        """X_h = T(z_k^j) with (k, j) the box of slot h."""
        from ..algebra.poly import z
        k, j = slot_position(self.n, h)
        return self.letter(z(k, j))

    def basis_vector(self, m) -> FockVector:
        """X_{n^2}^{m_{n^2}} ... X_1^{m_1} v_0."""
        m = tuple(int(x) for x in m)
        if len(m) != self.slots or any(x < 0 for x in m):
            raise ValueError(f"need {self.slots} non-negative exponents")
        if sum(m) > self.cfg.safe_degree:
            raise LeakError(f"total degree {sum(m)} exceeds safe degree {self.cfg.safe_degree}")
        v = FockVector.vacuum(self.slots, self.cfg).data
        for h in range(1, self.slots + 1):
            X = self.generator_for_slot(h)
            for _ in range(m[h - 1]):
                v = X.apply(v, self.cfg)
        return FockVector(v, self.cfg)


def fock_apply(p: NCPolynomial, v: FockVector, cfg: TruncationConfig | None = None) -> FockVector:
    cfg = cfg or v.cfg
    return FockRepresentation(p.n, cfg).apply(p, v)


def fock_basis(multi_index, cfg: TruncationConfig) -> FockVector:
    m = tuple(multi_index)
    n = int(round(len(m) ** 0.5))
    if n * n != len(m):
        raise ValueError("multi-index length must be a perfect square n^2")
    return FockRepresentation(n, cfg).basis_vector(m)


def fock_operator(p: NCPolynomial, cfg: TruncationConfig) -> SparseTensorOperator:
    return FockRepresentation(p.n, cfg).operator(p)
