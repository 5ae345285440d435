"""The Fock representation via path diagrams, checked against brute force.

Run: python demos/fock_paths.py
"""
import numpy as np

from qball.algebra import NCPolynomial, z
from qball.rep import FockRepresentation, TruncationConfig
from qball.rep.norms import operator_norm_estimate
from qball.rep.paths import brute_force_generator, enumerate_paths, fock_generator

n = 3
paths = enumerate_paths(n, 1, 1)
print(f"{len(paths)} diagrams contribute to the corner generator for n={n}")
for d in paths:
    print("  ", d.coeff, " ".join(d.factors))

cfg = TruncationConfig(0.5, 3)
for j in range(1, n + 1):
    ok = fock_generator(n, j, 1, cfg).allclose(brute_force_generator(n, j, 1, cfg))
    print(f"upper index {j}: path calculus agrees with brute force: {ok}")

# the vacuum is annihilated by every adjoint generator
cfg = TruncationConfig(0.5, 6)
F = FockRepresentation(2, cfg)
vac = np.zeros((6,) * 4, dtype=complex)
vac[(0,) * 4] = 1
zstar = F.operator(NCPolynomial.gen(z(2, 1), 2)).adjoint()
print("|z[2,1]^* vacuum| =", np.abs(zstar.apply(vac, cfg)).max())

# the corner generator is not a contraction: its norm approaches 1/q
for g in (z(1, 1), z(1, 2), z(2, 2)):
    nrm = operator_norm_estimate(F.operator(NCPolynomial.gen(g, 2)), cfg=cfg, height=cfg.N - 2)
    print(f"norm of {g} on leak-free vectors: {nrm:.6f}")
