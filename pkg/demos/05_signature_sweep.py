"""Sweep eps over a grid and watch the signature of M(eps) step down."""
import numpy as np

import specmix as sm
from specmix.sweep import eps_grid, instance_rng, random_partitioned_graph, records_to_csv

# a random dense graph drawn the way the experiments draw them
g = random_partitioned_graph(instance_rng(seed=7, index=0), (8, 12))
op = sm.build_operator(g)
grid = eps_grid(0.01, 100, 0.01)
res = sm.signature_sweep(op, grid)

sig = res.signatures
steps = np.flatnonzero(sig[1:] != sig[:-1])
print(f"n={g.n}, {g.num_g} diffusive and {g.num_h} saddle edges")
print("signature at eps=0.01:", sig[0], " at eps=100:", sig[-1])
for k in steps:
    print(f"  signature {sig[k]} -> {sig[k + 1]} between eps={grid[k]} and {grid[k + 1]}")
print("transitions observed", res.transitions_observed, "bound", res.bounds.combined,
      "monotone", res.monotone_nonincreasing)

# exact singular points, for comparison with the grid
print("exact positive roots of det:", len(sm.exact_transition_candidates(op)))

# plot-ready CSV (first lines only)
text = records_to_csv(((0, r) for r in res.records[:3]), {"seed": 7})
print(text)
