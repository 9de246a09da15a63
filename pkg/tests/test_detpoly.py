from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import TRIANGLE, partitioned_graphs
from specmix.detpoly import (c_factor, det_polynomial, det_polynomial_by_permutations, exact_transition_candidates,
                             isolate_positive_roots, product_expansion_check, transition_bounds)
from specmix.errors import BadR, ZeroPolynomial
from specmix.exact import IntPolynomial, det_exact, rank_exact, sturm_count
from specmix.graph import parse_graph
from specmix.operator import build_operator


def op_of(text):
    return build_operator(parse_graph(text))


def test_det_polynomial_examples():
    assert det_polynomial(op_of(TRIANGLE)) == [0, 2, -2]
    assert det_polynomial(op_of("n 3\ng 1 2\ng 2 3")).is_zero()
    assert det_polynomial(op_of("n 2\nh 1 2")) == [0, 0, -1]


def test_c_factor_examples():
    x1, x2, y1, y2 = 2, 3, 5, 7
    assert c_factor([x1, x2], [y1, y2], 1) == x1 * y2 + x2 * y1
    assert c_factor([2, 3, 4], [5, 6, 7], 0) == 24
    assert c_factor([2, 3, 4], [5, 6, 7], 3) == 210
    assert c_factor([1, 2, 3], [1, 1, 1], 2) == 6
    with pytest.raises(BadR):
        c_factor([1, 2], [1, 2], 3)


def test_product_expansion_examples():
    assert product_expansion_check([4], [-3], [1, 2, Fraction(1, 3)])
    rng = np.random.default_rng(5)
    xs = [int(v) for v in rng.integers(-9, 10, 8)]
    ys = [int(v) for v in rng.integers(-9, 10, 8)]
    assert product_expansion_check(xs, ys, [1, 2, 3])
    assert all(c_factor(xs, [0] * 8, r) == 0 for r in range(1, 9))


def test_bounds_examples():
    b = transition_bounds(op_of(TRIANGLE))
    assert (b.dim_ker, b.signature_adjacency) == (1, 0)
    assert (b.bound_kernel, b.bound_signature, b.combined) == (2, 4, 2)
    b = transition_bounds(op_of("n 4\ng 1 3\nh 1 2\nh 3 4"))
    assert (b.dim_ker, b.signature_adjacency, b.bound_kernel, b.bound_signature) == (0, 0, 4, 4)
    assert b.tighter == "equal"
    assert transition_bounds(op_of("n 3\ng 1 2\ng 2 3")).bound_kernel == 0


def test_root_isolation_examples():
    (lo, hi), = exact_transition_candidates(op_of(TRIANGLE))
    assert lo < 1 <= hi and hi - lo <= Fraction(1, 10**6)
    with pytest.raises(ZeroPolynomial):
        exact_transition_candidates(op_of("n 3\ng 1 2\ng 2 3"))
    assert exact_transition_candidates(op_of("n 2\nh 1 2")) == []


def test_isolation_separates_close_roots():
    # roots 1/1000 and 2/1000, plus 5
    p = IntPolynomial([-1, 1000]) * IntPolynomial([-2, 1000]) * IntPolynomial([-5, 1])
    intervals = isolate_positive_roots(p, Fraction(1, 10**7))
    assert len(intervals) == 3
    for (lo, hi), root in zip(intervals, (Fraction(1, 1000), Fraction(2, 1000), 5)):
        assert lo < root <= hi


@settings(max_examples=40, deadline=None)
@given(partitioned_graphs(max_n=6))
def test_matches_permutation_expansion(g):
    op = build_operator(g)
    p = det_polynomial(op)
    assert p == det_polynomial_by_permutations(op.laplacian, op.adjacency)
    assert p(0) == 0


@settings(max_examples=60, deadline=None)
@given(partitioned_graphs(max_n=8))
def test_degree_and_leading_term(g):
    op = build_operator(g)
    p = det_polynomial(op)
    adj = [[int(x) for x in row] for row in op.adjacency]
    assert p.degree <= g.n - (g.n - rank_exact(adj))
    top = p.coeffs[g.n] if len(p.coeffs) > g.n else 0
    assert top == det_exact(adj)


@settings(max_examples=40, deadline=None)
@given(partitioned_graphs(max_n=7), st.lists(st.fractions(0, 50, max_denominator=40), min_size=5, max_size=5))
def test_interpolation_consistency(g, points):
    op = build_operator(g)
    p = det_polynomial(op)
    for eps in points:
        # det(q L + p A) = q^n det(M(p/q))
        q = eps.denominator
        assert det_exact(op.scaled_exact(eps)) == q ** g.n * p(eps)


@settings(max_examples=40, deadline=None)
@given(partitioned_graphs(min_n=2, max_n=8))
def test_root_count_within_bounds(g):
    op = build_operator(g)
    p = det_polynomial(op)
    if p.is_zero():
        return
    intervals = isolate_positive_roots(p)
    assert len(intervals) == sturm_count(p, 0)
    assert len(intervals) <= transition_bounds(op).combined


@given(st.integers(0, 9))
def test_term_counts(n):
    assert sum(c_factor([1] * n, [1] * n, r) for r in range(n + 1)) == 2**n
    assert all(c_factor([1] * n, [1] * n, r) == comb(n, r) for r in range(n + 1))
