"""What happens to the zero eigenvalues of L_G when a little saddle coupling is switched on.

With r diffusive components the r zero eigenvalues move like eps * theta_i,
where theta_i are eigenvalues of a small r x r matrix built from counts of
saddle edges.
"""
import numpy as np

import specmix as sm

cases = {
    "triangle": "n 3\ng 1 2\ng 2 3\nh 1 3\n",
    "two 3-paths": "n 6\ng 1 2\ng 2 3\ng 4 5\ng 5 6\nh 1 3\nh 4 6\nh 3 4\n",
    "two K2 + bridge": "n 4\ng 1 2\ng 3 4\nh 2 3\n",
}

for name, text in cases.items():
    g = sm.parse_graph(text)
    rep = sm.small_eps_verdict(g)
    print(f"{name:16s} r={rep.r} theta={np.round(rep.theta, 4)} verdict={rep.verdict.value}"
          f" forcing={rep.forcing_instability}")

    # first-order prediction against the actual smallest eigenvalues
    eps = 1e-3
    w = sm.sym_eigenvalues(sm.build_operator(g).evaluate(eps))
    near = np.sort(w[np.argsort(np.abs(w))[:rep.r]])
    print(f"{'':16s} eps={eps}: actual {near}, predicted {rep.predicted_mu(eps)}")

    # the residual shrinks like eps^2: ratios near 4 when eps doubles
    check = sm.richardson_check(g)
    print(f"{'':16s} residual ratios {np.round(check.ratios, 3).tolist()} passed={check.passed()}")

# The two-component test in integer arithmetic: between^2 < 4 * within_1 * within_2
g = sm.parse_graph(cases["two 3-paths"])
counts = sm.h_edge_counts(g, sm.connected_components(g))
print("two-component criterion:", sm.two_component_criterion(counts))
