"""Build a partitioned graph, its operator, and look at the spectrum.

Run:  python3 demos/01_graphs_and_operator.py
"""
import numpy as np

import specmix as sm

# A triangle: two diffusive edges (a path 1-2-3) and one saddle chord {1,3}.
g = sm.parse_graph("""
n 3
g 1 2
g 2 3
h 1 3
""")
print("vertices", g.n, "diffusive", g.g_edges, "saddle", g.h_edges)  # 0-based inside

op = sm.build_operator(g)
print("L_G =\n", op.laplacian)
print("A_H =\n", op.adjacency)

# M(eps) is evaluated on demand, never stored
for eps in (0.0, 0.5, 1.0, 2.0):
    m = op.evaluate(eps)
    w = sm.sym_eigenvalues(m)
    print(f"eps={eps:<4} eigenvalues {np.round(w, 6)}  inertia {sm.inertia_of(m).as_tuple()}")

# the trace only sees the diffusive edges
print("trace check", sm.trace_identity_check(op, 3.7))

# swapping the two ends of the path is a symmetry, swapping 1 and 2 is not
print("1<->3 symmetry:", sm.is_symmetry(op, [2, 1, 0]))
print("1<->2 symmetry:", sm.is_symmetry(op, [1, 0, 2]))

# components of the diffusive part span the kernel of L_G
two = sm.parse_graph("n 6\ng 1 2\ng 2 3\ng 4 5\ng 5 6\nh 1 3\nh 4 6\nh 3 4\n")
comp = sm.connected_components(two)
lap = sm.build_operator(two).laplacian
print("components", comp.r, "sizes", comp.sizes)
print("L_G @ indicators =", [(lap @ comp.indicator(i)).tolist() for i in range(comp.r)])
