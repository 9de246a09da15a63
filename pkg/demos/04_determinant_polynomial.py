"""det(L_G + eps A_H) as an exact integer polynomial and bounds on signature changes."""
import specmix as sm
from specmix.detpoly import c_factor

g = sm.parse_graph("n 3\ng 1 2\ng 2 3\nh 1 3\n")
op = sm.build_operator(g)

p = sm.det_polynomial(op)
print("coefficients (constant first):", p.coeffs)          # 2 eps - 2 eps^2
print("brute-force permutation sum   :", sm.det_polynomial_by_permutations(op.laplacian, op.adjacency).coeffs)

for lo, hi in sm.exact_transition_candidates(op):
    print(f"positive root in ({float(lo):.8f}, {float(hi):.8f}]")

b = sm.transition_bounds(op)
print("bounds", b.to_dict())

# The mixed expansion behind the degree count: prod (x_i + eps y_i) = sum eps^r C_{n,r}
xs, ys = [3, -1, 2, 5], [1, 4, -2, 0]
print("C_{4,r}:", [c_factor(xs, ys, r) for r in range(5)])
print("expansion holds:", sm.product_expansion_check(xs, ys, [1, 2, 3]))
