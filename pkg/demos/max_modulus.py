"""Compare Fock norms with the boundary supremum for a few polynomials.

Run: python demos/max_modulus.py
For n=1 the boundary is the unit circle and the gap closes as the truncation grows.
"""
from qball.algebra import NCPolynomial, z
from qball.verify import SuiteConfig
from qball.verify.sampling import circle_sup
from qball.verify.suites import max_modulus_check
from qball.rep import FockRepresentation, TruncationConfig
from qball.rep.norms import operator_norm_estimate

x = NCPolynomial.gen(z(1, 1), 1)
p = x * x + x
sup = circle_sup(p, 0.5)
print("p =", p, " circle sup =", round(sup, 6))
for N in (16, 64, 256):
    cfg = TruncationConfig(0.5, N)
    f = operator_norm_estimate(FockRepresentation(1, cfg).operator(p), cfg=cfg, height=N - 1 - p.degree())
    print(f"N={N:4d} Fock norm {f:.6f}  relative gap {(sup - f) / sup:.2e}")

print()
rep = max_modulus_check(SuiteConfig(n=2, q=0.5, seed=7), samples=5)
for c in rep.checks:
    print(c.name, "pass" if c.passed else "FAIL", c.detail)
