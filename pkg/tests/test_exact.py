import itertools
from fractions import Fraction
from math import prod

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import int_sym_matrices
from specmix.errors import ZeroPolynomial
from specmix.exact import (INF, IntPolynomial, char_poly_exact, deflation_chain, det_exact, exact_sign_counts,
                           positive_root_count, rank_exact, squarefree_part, sturm_count)
from specmix.linalg import Inertia

PATH_L = [[1, -1, 0], [-1, 2, -1], [0, -1, 1]]
TRIANGLE_M1 = [[1, -1, 1], [-1, 2, -1], [1, -1, 1]]


def leibniz(m) -> int:
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        total += (-1) ** inversions * prod(int(m[i][perm[i]]) for i in range(n))
    return total


def test_det_examples():
    assert det_exact(np.eye(3, dtype=int)) == 1
    assert det_exact(PATH_L) == 0
    assert det_exact(TRIANGLE_M1) == 0
    assert det_exact([[0, 1], [1, 0]]) == -1
    assert det_exact([]) == 1


def test_det_big_integers():
    m = [[10**30 + i * j for j in range(3)] for i in range(3)]
    m[0][0] += 1
    assert det_exact(m) == leibniz(m)


def test_rank_examples():
    assert rank_exact([[0] * 4 for _ in range(4)]) == 0
    a = [[0, 0, 1], [0, 0, 0], [1, 0, 0]]
    assert rank_exact(a) == 2
    match = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    assert rank_exact(match) == 4
    assert rank_exact([[1, 2, 3], [2, 4, 6]]) == 1


def test_char_poly_examples():
    assert char_poly_exact([[0, 1], [1, 0]]) == [-1, 0, 1]
    assert char_poly_exact(PATH_L) == [0, 3, -4, 1]
    assert char_poly_exact(TRIANGLE_M1) == [0, 2, -4, 1]


def test_sturm_examples():
    assert sturm_count(IntPolynomial([-1, 0, 1]), 0, INF) == 1
    assert sturm_count(IntPolynomial([0, 2, -2]), 0, INF) == 1
    assert sturm_count(IntPolynomial([0, 2, -4, 1]), 0, INF) == 2
    assert sturm_count(IntPolynomial([-1, 0, 1])) == 2
    # half-open: the right endpoint counts, the left does not
    assert sturm_count(IntPolynomial([-1, 1]), 0, 1) == 1
    assert sturm_count(IntPolynomial([-1, 1]), 1, 2) == 0
    assert sturm_count(IntPolynomial([0, 2, -2]), Fraction(1, 2), 0.75) == 0


def test_sturm_errors():
    with pytest.raises(ZeroPolynomial):
        sturm_count(IntPolynomial([0]))
    with pytest.raises(ValueError):
        sturm_count(IntPolynomial([1, 1]), 2, 1)


def test_sign_count_examples():
    assert exact_sign_counts([[0, 0, 1], [0, 0, 0], [1, 0, 0]]) == Inertia(1, 1, 1)
    assert exact_sign_counts(PATH_L) == Inertia(0, 1, 2)
    assert exact_sign_counts([[0, 0], [0, 0]]) == Inertia(0, 2, 0)


def test_multiplicities():
    # (x - 1)^3 (x - 2)^2 x (x + 1)
    p = IntPolynomial([1])
    for root, mult in ((1, 3), (2, 2), (0, 1), (-1, 1)):
        for _ in range(mult):
            p = p * IntPolynomial([-root, 1])
    assert squarefree_part(p).degree == 4
    assert len(deflation_chain(p)) == 3
    assert positive_root_count(p) == 5
    assert p.multiplicity_at_zero() == 1


def test_polynomial_arithmetic():
    p = IntPolynomial([1, 2, 3])
    q = IntPolynomial([0, -1])
    assert (p * q)(Fraction(3, 2)) == p(Fraction(3, 2)) * q(Fraction(3, 2))
    assert (p - p).is_zero() and (p - p).degree == -1
    assert p.derivative() == [2, 6]
    assert IntPolynomial.from_rational([Fraction(1, 2), Fraction(-1, 3)]) == [3, -2]


@given(int_sym_matrices(max_dim=6))
def test_det_matches_leibniz(m):
    assert det_exact(m) == leibniz(m)


@given(int_sym_matrices(max_dim=8))
def test_det_is_char_poly_constant(m):
    n = m.shape[0]
    assert det_exact(m) == (-1) ** n * char_poly_exact(m)(0)


@given(int_sym_matrices(max_dim=8))
def test_rank_vs_zero_multiplicity(m):
    assert rank_exact(m) == m.shape[0] - char_poly_exact(m).multiplicity_at_zero()


@given(int_sym_matrices(max_dim=8))
def test_distinct_real_roots(m):
    p = char_poly_exact(m)
    sf = squarefree_part(p)
    assert sturm_count(p) == sf.degree


@settings(max_examples=60)
@given(int_sym_matrices(max_dim=8))
def test_sign_counts_vs_float(m):
    w = np.linalg.eigvalsh(m.astype(float))
    if np.any((np.abs(w) > 1e-9) & (np.abs(w) < 1e-6)):
        return
    counts = exact_sign_counts(m)
    assert counts.n_neg == np.sum(w < -1e-9)
    assert counts.n_pos == np.sum(w > 1e-9)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6), st.integers(-3, 3))
def test_sturm_matches_product_roots(roots, shift):
    p = IntPolynomial([1])
    for r in roots:
        p = p * IntPolynomial([-r, 1])
    expected = len({r for r in roots if shift < r <= shift + 10})
    assert sturm_count(p, shift, shift + 10) == expected
