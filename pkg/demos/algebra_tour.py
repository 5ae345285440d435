"""Normal forms in the holomorphic algebra for 2x2 matrices.

Run: python demos/algebra_tour.py
"""
from math import comb

from qball.algebra import (HOLOMORPHIC, MATQ, NCPolynomial, check_confluence, from_text,
                           graded_dimension, normal_form, q_determinant, rewrite_system, star, to_text, z)

n = 2
a = NCPolynomial.gen(z(1, 1), n)
b = NCPolynomial.gen(z(2, 2), n)

# products in the "wrong" order get rewritten to the ordered basis
print("z[2,2] z[1,1] ->", normal_form(b * a))
print("z[1,1] z[2,2] ->", normal_form(a * b))

# the text form round-trips
c = a
d = b
text = to_text(normal_form(c * d - d * c))
print("[z[1,1], z[2,2]] =", text)
print("round trip through text:", from_text(text, MATQ, n) == normal_form(c * d - d * c))

print("q-determinant of the 2x2 matrix:", q_determinant(n, MATQ))
print("star of z[1,1]*z[1,2]:", star(a * NCPolynomial.gen(z(1, 2), n)))

# the graded dimensions match the commutative count
for d in range(5):
    print(f"degree {d}: {graded_dimension(HOLOMORPHIC, n, d)} normal words (expected {comb(n * n + d - 1, d)})")

rep = check_confluence(rewrite_system(HOLOMORPHIC, n), 3)
print("overlaps resolve up to degree 3:", rep.passed)
