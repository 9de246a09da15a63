"""The random-ensemble experiments, on reduced grids so they finish in seconds.

Drop the eps_step override to run the full 0.01-step protocols.
"""
import specmix as sm

for label, cfg in [
    ("graphs, n in [10, 20]", sm.graph_ensemble_config(eps_step=0.1)),
    ("pencils a a^T + eps (b + b^T)", sm.pencil_ensemble_config(eps_step=0.1)),
    ("graphs with bounds, n in [5, 20]", sm.bounds_ensemble_config(eps_step=0.1, instances=10)),
]:
    result = sm.run_figure_experiment(cfg)
    summary = result.summary()
    print(f"{label}: {len(result.instances)} instances, "
          f"signature increases in {len(result.violations)}, within bounds {summary['all_within_bounds']}")
    for inst in summary["instances"][:3]:
        keys = ("instance", "dim", "transitions_observed", "combined", "exact_positive_roots")
        print("   ", {k: inst.get(k) for k in keys})
