"""Exact determinant polynomial ``det(L_G + eps * A_H)`` and signature-transition bounds."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from .errors import BadR, NonIntegerCoefficient, ZeroPolynomial
from .exact import IntPolynomial, det_exact, exact_sign_counts, rank_exact, sign_variations, sturm_sequence
from .operator import MixedOperator

ISOLATION_WIDTH = Fraction(1, 10**6)


def _interpolate(nodes: Sequence[int], values: Sequence[int]) -> list[Fraction]:
    """Monomial coefficients of the interpolating polynomial (Newton form, exact)."""
    k = len(nodes)
    dd = [Fraction(v) for v in values]
    for level in range(1, k):
        for i in range(k - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level])
    coeffs = [Fraction(0)] * k
    for i in range(k - 1, -1, -1):
        # coeffs <- coeffs * (x - nodes[i]) + dd[i]
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [s - nodes[i] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += dd[i]
    return coeffs


def det_polynomial(op: MixedOperator) -> IntPolynomial:
    """Coefficients of ``det(M(eps))`` from exact determinants at ``eps = 0..n``."""
    n = op.n
    nodes = list(range(n + 1))
    values = [det_exact(op.exact_at(k)) for k in nodes]
    coeffs = _interpolate(nodes, values)
    if any(c.denominator != 1 for c in coeffs):
        raise NonIntegerCoefficient(f"interpolated determinant has non-integer coefficients {coeffs}")
    return IntPolynomial([int(c) for c in coeffs])


def c_factor(xs: Sequence, ys: Sequence, r: int):
    """Sum over all ``r``-subsets ``S`` of ``prod_{i not in S} xs[i] * prod_{i in S} ys[i]``."""
    n = len(xs)
    if len(ys) != n:
        raise ValueError("xs and ys must have equal length")
    if not 0 <= r <= n:
        raise BadR(f"r must lie in 0..{n}, got {r}")
    total = 0
    for subset in itertools.combinations(range(n), r):
        chosen = set(subset)
        total += prod(ys[i] if i in chosen else xs[i] for i in range(n))
    return total


def product_expansion_check(xs: Sequence, ys: Sequence, eps_values: Sequence) -> bool:
    """Check ``prod(x_i + eps*y_i) == sum_r eps**r * C_{n,r}`` exactly at each eps."""
    n = len(xs)
    terms = [c_factor(xs, ys, r) for r in range(n + 1)]
    for eps in eps_values:
        eps = Fraction(eps)
        lhs = prod((Fraction(x) + eps * y for x, y in zip(xs, ys)), start=Fraction(1))
        rhs = sum((eps**r * t for r, t in enumerate(terms)), start=Fraction(0))
        if lhs != rhs:
            return False
    return True


def _permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        v = start
        while not seen[v]:
            seen[v] = True
            v = perm[v]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_polynomial_by_permutations(lap, adj) -> IntPolynomial:
    """Leibniz expansion of ``det(L + eps*A)`` grouped by powers of eps.

    Exponential in ``n``; a reference for small matrices only.  Permutations
    that pass through an entry where both matrices vanish are skipped.
    """
    n = len(lap)
    lap = [[int(x) for x in row] for row in lap]
    adj = [[int(x) for x in row] for row in adj]
    coeffs = [0] * (n + 1)
    for perm in itertools.permutations(range(n)):
        xs = [lap[i][perm[i]] for i in range(n)]
        ys = [adj[i][perm[i]] for i in range(n)]
        if any(x == 0 and y == 0 for x, y in zip(xs, ys)):
            continue
        sgn = _permutation_sign(perm)
        for r in range(n + 1):
            coeffs[r] += sgn * c_factor(xs, ys, r)
    return IntPolynomial(coeffs)


@dataclass(frozen=True)
class TransitionBounds:
    n: int
    dim_ker: int
    signature_adjacency: int
    bound_kernel: int
    bound_signature: int

    @property
    def combined(self) -> int:
        return min(self.bound_kernel, self.bound_signature)

    @property
    def tighter(self) -> str:
        """Which bound is smaller: compares ``2 * dim ker`` with ``s(A_H)``."""
        lhs = 2 * self.dim_ker
        if lhs > self.signature_adjacency:
            return "kernel"
        if lhs < self.signature_adjacency:
            return "signature"
        return "equal"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "dim_ker_adjacency": self.dim_ker,
            "signature_adjacency": self.signature_adjacency,
            "bound_kernel": self.bound_kernel,
            "bound_signature": self.bound_signature,
            "combined": self.combined,
            "tighter": self.tighter,
        }


def transition_bounds(op: MixedOperator) -> TransitionBounds:
    n = op.n
    adj = [[int(x) for x in row] for row in op.adjacency]
    dim_ker = n - rank_exact(adj)
    s = exact_sign_counts(adj).signature
    return TransitionBounds(n, dim_ker, s, n - dim_ker, n - s + dim_ker)


def positive_root_bound(p: IntPolynomial) -> Fraction:
    """Cauchy bound: every root satisfies ``|x| < 1 + max |a_i / a_d|``."""
    lead = abs(p.leading)
    return 1 + max((Fraction(abs(c), lead) for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_positive_roots(p: IntPolynomial, width: Fraction = ISOLATION_WIDTH) -> list[tuple[Fraction, Fraction]]:
    """Half-open intervals ``(lo, hi]``, one per distinct positive root, each of width <= ``width``."""
    if p.is_zero():
        raise ZeroPolynomial("polynomial vanishes identically")
    if p.degree < 1:
        return []
    seq = sturm_sequence(p)
    variations: dict[Fraction, int] = {}

    def var(x: Fraction) -> int:
        if x not in variations:
            variations[x] = sign_variations(seq, x)
        return variations[x]

    out = []
    stack = [(Fraction(0), positive_root_bound(p))]
    while stack:
        lo, hi = stack.pop()
        k = var(lo) - var(hi)
        if k == 0:
            continue
        if k == 1 and hi - lo <= width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def exact_transition_candidates(op: MixedOperator) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the positive eps at which ``M(eps)`` is singular.

    Raises :class:`ZeroPolynomial` when ``M(eps)`` is singular for every eps.
    """
    p = det_polynomial(op)
    if p.is_zero():
        raise ZeroPolynomial("M(eps) is identically singular")
    return isolate_positive_roots(p)
