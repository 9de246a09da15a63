"""Exact determinants, ranks, characteristic polynomials and Sturm counts.

Everything here runs on Python integers, so it doubles as an oracle for
the floating-point eigensolver.
"""
import numpy as np

import specmix as sm
from specmix.exact import INF, IntPolynomial

path_l = [[1, -1, 0], [-1, 2, -1], [0, -1, 1]]
print("det L(path)      ", sm.det_exact(path_l))          # Laplacians are singular
print("char poly L(path)", sm.char_poly_exact(path_l))    # x^3 - 4x^2 + 3x, low degree first
print("sign counts      ", sm.exact_sign_counts(path_l))

m1 = [[1, -1, 1], [-1, 2, -1], [1, -1, 1]]  # triangle operator at eps = 1
p = sm.char_poly_exact(m1)
print("char poly M(1)   ", p, "positive roots:", sm.sturm_count(p, 0, INF))

# Big integers stay exact
big = [[10**20, 1], [1, 10**20]]
print("det of big matrix", sm.det_exact(big))

# Compare exact inertia with the Jacobi solver on a random integer matrix
rng = np.random.default_rng(0)
a = rng.integers(-3, 4, size=(8, 8))
a = np.triu(a) + np.triu(a, 1).T
print("exact inertia", sm.exact_sign_counts(a).as_tuple(),
      " float inertia", sm.inertia_of(a.astype(float)).as_tuple())

# Sturm counts on half-open intervals (a, b]
q = IntPolynomial([-1, 0, 1])   # x^2 - 1
print("roots of x^2-1 in (-1, 1]:", sm.sturm_count(q, -1, 1))
