"""Operator norm estimates for matrix-free tensor operators."""
from __future__ import annotations

import numpy as np
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from .operators import SparseTensorOperator, TruncationConfig, height_mask


DENSE_LIMIT = 1024


class NormDidNotConverge(RuntimeError):
    pass


def _start_vector(dim: int) -> np.ndarray:
    # deterministic and generic: no accidental orthogonality to the top singular vector
    k = np.arange(dim, dtype=float)
    v = 1.0 + 0.5 * np.cos(1.7 * k + 0.3) + 0.25j * np.sin(0.9 * k)
    return v / np.linalg.norm(v)


def operator_norm_estimate(op: SparseTensorOperator, tol: float = 1e-10, cfg: TruncationConfig | None = None,
                           height: int | None = None, method: str = "auto", max_iter: int = 5000) -> float:
    """Largest singular value of op, optionally restricted to inputs of support height <= ``height``.

    ``method='power'`` runs plain power iteration on op^* op; ``'lanczos'``
    hands the same matrix-free product to ARPACK. Both start from the same
    deterministic vector. ``'auto'`` uses a dense SVD below DENSE_LIMIT
    basis vectors and Lanczos above it.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    cfg = cfg or op.cfg
    if op.slots == 0:
        return abs(op.as_scalar())
    shape = (cfg.N,) * op.slots
    dim = int(np.prod(shape))
    mask = None if height is None else height_mask(op.slots, height, cfg.N).ravel()
    adj = op.adjoint()

    def gram(x):
        x = np.asarray(x, dtype=complex).reshape(-1)
        if mask is not None:
            x = np.where(mask, x, 0)
        y = adj.apply(op.apply(x.reshape(shape), cfg), cfg).reshape(-1)
        if mask is not None:
            y = np.where(mask, y, 0)
        return y

    v0 = _start_vector(dim)
    if mask is not None:
        v0 = np.where(mask, v0, 0)
        if not np.any(mask):
            return 0.0
        v0 = v0 / np.linalg.norm(v0)

    if method == "auto":
        method = "dense" if dim <= DENSE_LIMIT else "lanczos"
    if method == "dense":
        M = op.to_dense(cfg)
        if mask is not None:
            M = M[:, mask]
        return float(np.linalg.norm(M, 2)) if M.size else 0.0

    if method == "lanczos" and dim > 2:
        A = LinearOperator((dim, dim), matvec=gram, dtype=complex)
        try:
            vals = eigsh(A, k=1, which="LA", v0=v0, tol=tol, maxiter=max_iter, return_eigenvectors=False)
            return float(np.sqrt(max(vals[0].real, 0.0)))
        except ArpackNoConvergence:
            method = "power"  # fall through to the slower but robust iteration
    if method not in ("power", "lanczos"):
        raise ValueError(f"unknown method {method!r}")

    v = v0
    est = 0.0
    for _ in range(max_iter):
        w = gram(v)
        new = float(np.vdot(v, w).real)
        nrm = np.linalg.norm(w)
        if nrm == 0:
            return 0.0
        v = w / nrm
        if abs(new - est) <= tol * max(abs(new), 1e-300):
            return float(np.sqrt(max(new, 0.0)))
        est = new
    raise NormDidNotConverge(f"power iteration did not reach tol={tol} in {max_iter} steps")


def dense_norm(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, 2))
