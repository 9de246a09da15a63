"""Exact integer and rational linear algebra.

Everything here runs on Python integers and :class:`fractions.Fraction`, so
results are exact at any size; cost grows quickly, so keep matrices below
about 30 rows.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import InternalInconsistency, ZeroPolynomial
from .linalg import Inertia

INF = float("inf")


def as_int_matrix(m) -> list[list[int]]:
    rows = [[_to_int(x) for x in row] for row in m]
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("expected a square matrix")
    return rows


def _to_int(x) -> int:
    if isinstance(x, int):
        return x
    xi = int(x)
    if xi != x:
        raise ValueError(f"non-integer entry {x!r}")
    return xi


def is_symmetric(m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


class IntPolynomial:
    """Polynomial with integer coefficients, ``coeffs[k]`` multiplying ``x**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        c = [_to_int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_rational(cls, coeffs: Sequence[Fraction]) -> "IntPolynomial":
        """Positive multiple of a rational polynomial with coprime integer coefficients."""
        coeffs = [Fraction(x) for x in coeffs]
        den = 1
        for x in coeffs:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in coeffs]
        g = 0
        for x in ints:
            g = math.gcd(g, x)
        return cls([x // g for x in ints] if g > 1 else ints)

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == IntPolynomial(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        k = max(len(a), len(b))
        return IntPolynomial([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(k)])

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def multiplicity_at_zero(self) -> int:
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no finite root multiplicity")
        k = 0
        while self.coeffs[k] == 0:
            k += 1
        return k


# -- rational polynomial helpers (lists of Fractions, low degree first) --------

def _strip(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _divmod(num: list, den: list) -> tuple[list, list]:
    num = [Fraction(x) for x in num]
    den = _strip([Fraction(x) for x in den])
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    num = _strip(num)
    if len(num) < len(den):
        return [], num
    quot = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        coef = num[k + len(den) - 1] / lead
        quot[k] = coef
        if coef:
            for i, d in enumerate(den):
                num[k + i] -= coef * d
    return _strip(quot), _strip(num[: len(den) - 1])


def poly_divmod(p: IntPolynomial, d: IntPolynomial) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder over the rationals."""
    return _divmod(list(p.coeffs), list(d.coeffs))


def poly_gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor, normalised primitive with positive leading coefficient."""
    a, b = list(p.coeffs), list(q.coeffs)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    if not a:
        return IntPolynomial()
    g = IntPolynomial.from_rational(a)
    return -g if g.leading < 0 else g


def exact_quotient(p: IntPolynomial, d: IntPolynomial) -> IntPolynomial:
    q, r = poly_divmod(p, d)
    if r:
        raise InternalInconsistency("expected exact polynomial division")
    return IntPolynomial.from_rational(q) if q else IntPolynomial()


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no square-free part")
    if p.degree < 1:
        return IntPolynomial([1])
    return exact_quotient(p, poly_gcd(p, p.derivative()))


def deflation_chain(p: IntPolynomial) -> list[IntPolynomial]:
    """``[p, gcd(p, p'), gcd of that with its derivative, ...]`` down to degree 0.

    A root of multiplicity ``m`` is a root of exactly the first ``m`` members,
    so summing distinct-root counts along the chain counts with multiplicity.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no deflation chain")
    chain = []
    while p.degree >= 1:
        chain.append(p)
        p = poly_gcd(p, p.derivative())
    return chain


# -- Sturm sequences ----------------------------------------------------------

def sturm_sequence(p: IntPolynomial) -> list[IntPolynomial]:
    """Sturm chain of the square-free part of ``p``, each term scaled positively."""
    f = squarefree_part(p)
    seq = [f]
    if f.degree < 1:
        return seq
    seq.append(f.derivative())
    while True:
        _, r = poly_divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append(-IntPolynomial.from_rational(r))
    return seq


def _sign_at(p: IntPolynomial, x) -> int:
    if x == INF:
        return (p.leading > 0) - (p.leading < 0)
    if x == -INF:
        s = (p.leading > 0) - (p.leading < 0)
        return s if p.degree % 2 == 0 else -s
    v = p(Fraction(x))
    return (v > 0) - (v < 0)


def sign_variations(seq: Sequence[IntPolynomial], x) -> int:
    signs = [s for s in (_sign_at(p, x) for p in seq) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _as_point(x):
    if isinstance(x, float) and math.isinf(x):
        return x
    return Fraction(x)


def sturm_count(p: IntPolynomial, a=-INF, b=INF) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval ``(a, b]``.

    Endpoints may be integers, fractions, finite floats (converted exactly)
    or ``±inf``.
    """
    if p.is_zero():
        raise ZeroPolynomial("Sturm count of the zero polynomial")
    a, b = _as_point(a), _as_point(b)
    if not a < b:
        raise ValueError(f"empty interval ({a}, {b}]")
    seq = sturm_sequence(p)
    return sign_variations(seq, a) - sign_variations(seq, b)


# -- determinants, rank, characteristic polynomials ---------------------------

def det_exact(m) -> int:
    """Determinant by fraction-free (Bareiss) elimination with row pivoting."""
    a = as_int_matrix(m)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def rank_exact(m) -> int:
    """Rank over the rationals via fraction-free elimination (any shape)."""
    a = [[_to_int(x) for x in row] for row in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(cols):
        pivot = next((i for i in range(rank, rows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, rows):
            f = a[i][col]
            a[i] = [(x * p - f * y) // prev for x, y in zip(a[i], a[rank])]
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def char_poly_exact(m) -> IntPolynomial:
    """``det(x*I - m)`` by the Faddeev-LeVerrier recursion in exact arithmetic.

    The recursion divides by ``k`` at step ``k``; for an integer matrix every
    division must be exact, and a remainder raises
    :class:`InternalInconsistency`.
    """
    a = as_int_matrix(m)
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        # mk <- a @ mk + c_prev * I
        mk = [[sum(a[i][l] * mk[l][j] for l in range(n) if a[i][l]) for j in range(n)] for i in range(n)]
        for i in range(n):
            mk[i][i] += c_prev
        tr = sum(a[i][l] * mk[l][i] for i in range(n) for l in range(n) if a[i][l])
        if tr % k:
            raise InternalInconsistency(f"non-integer characteristic coefficient {-tr}/{k}")
        coeffs[n - k] = -tr // k
    return IntPolynomial(coeffs)


def positive_root_count(p: IntPolynomial) -> int:
    """Positive real roots of ``p`` counted with multiplicity."""
    return sum(sturm_count(f, 0, INF) for f in deflation_chain(p))


def exact_sign_counts(m) -> Inertia:
    """Exact inertia of an integer symmetric matrix."""
    a = as_int_matrix(m)
    if not is_symmetric(a):
        raise ValueError("matrix is not symmetric")
    n = len(a)
    p = char_poly_exact(a)
    n_pos = positive_root_count(p)
    n_zero = n - rank_exact(a)
    return Inertia(n - n_pos - n_zero, n_zero, n_pos)
