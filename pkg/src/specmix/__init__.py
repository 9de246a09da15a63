"""Spectra of mixed graph operators ``M(eps) = L_G + eps * A_H``.

The edges of a simple graph are split into diffusive edges ``G``
(Laplacian coupling) and saddle edges ``H`` (adjacency coupling).  The
package computes inertia and signature of ``M(eps)`` numerically and
exactly, first-order small-eps predictions, the exact determinant
polynomial with bounds on signature transitions, seeded random sweeps, and
the linear gradient flow ``dq/dt = -M(eps) q``.
"""

__version__ = "0.1.0"

from .detpoly import (TransitionBounds, c_factor, det_polynomial, det_polynomial_by_permutations,
                      exact_transition_candidates, isolate_positive_roots, product_expansion_check,
                      transition_bounds)
from .dynamics import (CrossCheckReport, FlowResult, Verdict, integrate_flow, integrate_matrix_flow,
                       stability_cross_check)
from .errors import InputError, NumericalError, SpecmixError
from .exact import (IntPolynomial, char_poly_exact, det_exact, exact_sign_counts, rank_exact, sturm_count,
                    sturm_sequence)
from .graph import (ComponentDecomposition, EdgeClass, HEdgeCounts, PartitionedGraph, connected_components,
                    h_edge_counts, parse_graph)
from .linalg import Inertia, ZeroTolerance, inertia_of, jacobi_eigh, sym_eigenvalues
from .operator import MixedOperator, build_operator, evaluate, is_symmetry, trace_identity_check
from .perturbation import (FirstOrderVerdict, PerturbationReport, first_order_matrix, richardson_check,
                           small_eps_verdict, two_component_criterion)
from .sweep import (ExperimentConfig, Mode, graph_ensemble_config, pencil_ensemble_config, bounds_ensemble_config,
                    run_figure_experiment, signature_sweep)
