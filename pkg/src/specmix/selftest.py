"""Oracle-equivalence checks run by ``specmix selftest``.

Each check compares two independent computations of the same quantity on
small seeded random instances and prints one ``PASS``/``FAIL`` line.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .detpoly import c_factor, det_polynomial, det_polynomial_by_permutations, product_expansion_check
from .exact import char_poly_exact, det_exact, exact_sign_counts, rank_exact
from .graph import connected_components
from .linalg import ZeroTolerance, inertia_of, sym_eigenvalues
from .operator import build_operator
from .sweep import instance_rng, random_partitioned_graph


def _graphs(seed: int, count: int, n_range):
    return [random_partitioned_graph(instance_rng(seed, k), n_range, edge_rule="any") for k in range(count)]


def _check_detpoly(graphs) -> bool:
    for g in graphs:
        op = build_operator(g)
        if det_polynomial(op) != det_polynomial_by_permutations(op.laplacian, op.adjacency):
            return False
    return True


def _check_jacobi(graphs) -> bool:
    for g in graphs:
        m = build_operator(g).evaluate(0.7)
        ref = np.linalg.eigvalsh(m)
        if not np.allclose(sym_eigenvalues(m), ref, rtol=0, atol=1e-10 * (1 + np.abs(ref).max())):
            return False
    return True


def _check_inertia(graphs) -> bool:
    for g in graphs:
        op = build_operator(g)
        for k in (1, 2, 3):
            m = op.exact_at(k)
            w = np.linalg.eigvalsh(np.asarray(m, dtype=float))
            tau = ZeroTolerance.default_for(np.asarray(m, dtype=float)).tau
            if np.any((np.abs(w) > 0.5 * tau) & (np.abs(w) < 20 * tau)):
                continue  # too close to call numerically
            if exact_sign_counts(m) != inertia_of(np.asarray(m, dtype=float)):
                return False
    return True


def _check_det_rank(graphs) -> bool:
    for g in graphs:
        m = build_operator(g).exact_at(2)
        arr = np.asarray(m, dtype=float)
        if rank_exact(m) != np.linalg.matrix_rank(arr):
            return False
        # char poly is det(xI - m), so its constant term is (-1)^n det(m)
        if det_exact(m) != (-1) ** len(m) * char_poly_exact(m)(0):
            return False
    return True


def _check_kernel(graphs) -> bool:
    for g in graphs:
        lap = build_operator(g).exact_at(0)
        if char_poly_exact(lap).multiplicity_at_zero() != connected_components(g).r:
            return False
    return True


def _check_expansion(seed: int, count: int) -> bool:
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    for _ in range(count):
        n = int(rng.integers(1, 7))
        xs = [int(v) for v in rng.integers(-5, 6, n)]
        ys = [int(v) for v in rng.integers(-5, 6, n)]
        if not product_expansion_check(xs, ys, [Fraction(1), Fraction(2), Fraction(-3, 2)]):
            return False
        if sum(c_factor([1] * n, [1] * n, r) for r in range(n + 1)) != 2**n:
            return False
    return True


def run_selftest(out, seed: int = 0, instances: int = 20) -> bool:
    small = _graphs(seed, instances, (2, 6))
    medium = _graphs(seed + 1, instances, (5, 12))
    checks = [
        ("det polynomial: interpolation vs permutation expansion", lambda: _check_detpoly(small)),
        ("eigenvalues: jacobi vs LAPACK", lambda: _check_jacobi(medium)),
        ("inertia: exact vs floating point", lambda: _check_inertia(medium)),
        ("det and rank: exact vs char poly and LAPACK", lambda: _check_det_rank(medium)),
        ("kernel dimension vs component count", lambda: _check_kernel(medium)),
        ("product expansion identity", lambda: _check_expansion(seed, instances)),
    ]
    ok = True
    for name, fn in checks:
        passed = fn()
        ok &= passed
        out.write(f"{'PASS' if passed else 'FAIL'} {name}\n")
    return ok
