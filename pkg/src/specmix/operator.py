"""The mixed operator ``M(eps) = L_G + eps * A_H``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InternalInconsistency, InvalidPermutation, NegativeEpsilon
from .graph import PartitionedGraph

TRACE_RTOL = 1e-9


def laplacian_matrix(n: int, edges) -> np.ndarray:
    lap = np.zeros((n, n), dtype=np.int64)
    for i, j in edges:
        lap[i, j] = lap[j, i] = -1
        lap[i, i] += 1
        lap[j, j] += 1
    return lap


def adjacency_matrix(n: int, edges) -> np.ndarray:
    adj = np.zeros((n, n), dtype=np.int64)
    for i, j in edges:
        adj[i, j] = adj[j, i] = 1
    return adj


@dataclass(frozen=True, eq=False)
class MixedOperator:
    """Integer Laplacian of the diffusive edges and adjacency of the saddle edges.

    ``M(eps)`` itself is never stored; call :meth:`evaluate`.
    """

    graph: PartitionedGraph
    laplacian: np.ndarray = field(repr=False)
    adjacency: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.graph.n

    def evaluate(self, eps: float) -> np.ndarray:
        return evaluate(self, eps)

    def evaluate_grid(self, eps_values) -> np.ndarray:
        """Stack of ``M(eps)`` for every value in ``eps_values``, shape (k, n, n)."""
        eps_values = np.asarray(eps_values, dtype=float)
        if np.any(eps_values < 0):
            raise NegativeEpsilon("eps must be nonnegative")
        lap = self.laplacian.astype(float)
        adj = self.adjacency.astype(float)
        return lap[None, :, :] + eps_values[:, None, None] * adj[None, :, :]

    def exact_at(self, k: int) -> list[list[int]]:
        """``L + k*A`` as nested Python ints for integer ``k``."""
        m = self.laplacian + k * self.adjacency
        return [[int(x) for x in row] for row in m]

    def scaled_exact(self, eps) -> list[list[int]]:
        """Integer matrix ``q*L + p*A`` for a rational ``eps = p/q`` (a positive multiple of ``M(eps)``)."""
        eps = Fraction(eps)
        p, q = eps.numerator, eps.denominator
        return [[q * int(lij) + p * int(aij) for lij, aij in zip(lrow, arow)]
                for lrow, arow in zip(self.laplacian, self.adjacency)]


def build_operator(g: PartitionedGraph) -> MixedOperator:
    lap = laplacian_matrix(g.n, g.g_edges)
    adj = adjacency_matrix(g.n, g.h_edges)
    lap.setflags(write=False)
    adj.setflags(write=False)
    return MixedOperator(g, lap, adj)


def evaluate(op: MixedOperator, eps: float) -> np.ndarray:
    if eps < 0:
        raise NegativeEpsilon(f"eps must be nonnegative, got {eps}")
    return op.laplacian.astype(float) + float(eps) * op.adjacency.astype(float)


def trace_identity_check(op: MixedOperator, eps: float) -> tuple[float, int, bool]:
    """Compare ``tr M(eps)`` with twice the number of diffusive edges."""
    tr = float(np.trace(evaluate(op, eps)))
    expected = 2 * op.graph.num_g
    return tr, expected, abs(tr - expected) <= TRACE_RTOL * (1 + expected)


def _permutation_matrix(perm, n: int) -> np.ndarray:
    perm = [int(p) for p in perm]
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise InvalidPermutation(f"not a permutation of 0..{n - 1}: {perm}")
    pm = np.zeros((n, n), dtype=np.int64)
    pm[np.arange(n), perm] = 1
    return pm


def is_symmetry(op: MixedOperator, perm) -> bool:
    """Whether the vertex permutation commutes with ``M(eps)`` for every ``eps``.

    ``perm`` is 0-based: vertex ``v`` is sent to ``perm[v]``.  Membership is
    decided exactly by edge-set preservation; the commutator is then
    spot-checked in floating point at two values of ``eps``.
    """
    g = op.graph
    pm = _permutation_matrix(perm, g.n)
    image = g.relabel(perm)
    preserved = image.g_edges == g.g_edges and image.h_edges == g.h_edges
    exact = (np.array_equal(pm.T @ op.laplacian @ pm, op.laplacian)
             and np.array_equal(pm.T @ op.adjacency @ pm, op.adjacency))
    if preserved != exact:
        raise InternalInconsistency("edge preservation and matrix commutation disagree")
    if preserved:
        for eps in (0.5, 2.0):
            m = evaluate(op, eps)
            if not np.array_equal(pm @ m, m @ pm):
                raise InternalInconsistency(f"symmetry fails to commute with M({eps})")
    return preserved
