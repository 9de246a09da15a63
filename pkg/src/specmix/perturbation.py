"""First-order behaviour of the zero eigenvalues of ``L_G`` under ``eps * A_H``.

With ``r`` diffusive components, ``M(eps)`` has ``r`` eigenvalues that
vanish at ``eps = 0``.  To first order they are ``eps * theta_i`` where the
``theta_i`` are the eigenvalues of the ``r x r`` matrix

    Theta[i, i] = 2 * within[i] / size[i]
    Theta[i, j] = between[i, j] / sqrt(size[i] * size[j])

``Theta = D^{-1/2} W D^{-1/2}`` with the integer matrix ``W`` (``2*within``
on the diagonal, ``between`` off it) and ``D = diag(size)``, so the signs of
the ``theta_i`` are decided exactly by the inertia of ``W``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import WrongComponentCount
from .exact import char_poly_exact, exact_sign_counts, sturm_count
from .graph import (ComponentDecomposition, HEdgeCounts, PartitionedGraph, connected_components,
                    h_edge_counts, is_complete_component)
from .linalg import Inertia, sym_eigenvalues
from .operator import build_operator, evaluate


class FirstOrderVerdict(str, Enum):
    POSITIVE_DEFINITE = "positive_definite"
    INDEFINITE = "indefinite"
    # smallest theta is exactly zero: first-order theory says nothing
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class FirstOrderMatrix:
    sizes: tuple[int, ...]
    weights: tuple[tuple[int, ...], ...]  # W
    entries: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.sizes)

    def theta(self) -> np.ndarray:
        return sym_eigenvalues(self.entries)

    def exact_inertia(self) -> Inertia:
        return exact_sign_counts(self.weights)

    def scaled_rational(self) -> tuple[int, list[list[int]]]:
        """``(s, K)`` with integer ``K = s * D^{-1} W``, a matrix similar to ``s * Theta``."""
        s = math.lcm(*self.sizes)
        k = [[s // self.sizes[i] * w for w in row] for i, row in enumerate(self.weights)]
        return s, k


def first_order_matrix(counts: HEdgeCounts, comp: ComponentDecomposition) -> FirstOrderMatrix:
    r = comp.r
    if counts.r != r:
        raise ValueError("counts and decomposition disagree on the component count")
    w = [[(2 * counts.within[i] if i == j else counts.between[i][j]) for j in range(r)] for i in range(r)]
    sizes = np.asarray(comp.sizes, dtype=float)
    scale = 1.0 / np.sqrt(sizes)
    entries = np.asarray(w, dtype=float) * scale[:, None] * scale[None, :]
    # the two triangles go through identical float operations, but keep it exact
    entries = np.triu(entries) + np.triu(entries, 1).T
    entries.setflags(write=False)
    return FirstOrderMatrix(tuple(comp.sizes), tuple(tuple(row) for row in w), entries)


def _require_two(counts: HEdgeCounts) -> None:
    if counts.r != 2:
        raise WrongComponentCount(f"needs exactly 2 components, got {counts.r}")


def two_component_criterion(counts: HEdgeCounts) -> bool:
    """Positive definiteness for small eps with two components: ``c^2 < 4 * s1 * s2``.

    ``c`` counts saddle edges between the components and ``s1``, ``s2`` those
    inside each one.  Strict integer comparison.
    """
    _require_two(counts)
    c = counts.between[0][1]
    return c * c < 4 * counts.within[0] * counts.within[1]


def two_component_criterion_unscaled(counts: HEdgeCounts) -> bool:
    """The variant ``c^2 < s1 * s2`` without the factor 4 (a sufficient condition)."""
    _require_two(counts)
    c = counts.between[0][1]
    return c * c < counts.within[0] * counts.within[1]


@dataclass
class PerturbationReport:
    r: int
    sizes: tuple[int, ...]
    within: tuple[int, ...]
    between: tuple[tuple[int, ...], ...]
    matrix: np.ndarray
    theta: np.ndarray
    verdict: FirstOrderVerdict
    slope_one_component: float | None
    complete_components: list[int]
    forcing_instability: list[int]
    criterion_two_component: bool | None = None
    unscaled_criterion: bool | None = None
    exact_theta_check: bool | None = None

    @property
    def positive_definite_small_eps(self) -> bool | None:
        """True / False, or None when the smallest theta is exactly zero."""
        if self.verdict is FirstOrderVerdict.UNDETERMINED:
            return None
        return self.verdict is FirstOrderVerdict.POSITIVE_DEFINITE

    @property
    def predicted_mu_first_order(self) -> np.ndarray:
        """Slopes of the vanishing eigenvalues: ``mu_i(eps) ~ eps * theta_i``."""
        return self.theta

    def predicted_mu(self, eps: float) -> np.ndarray:
        return eps * self.theta

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "sizes": list(self.sizes),
            "within": list(self.within),
            "between": [list(row) for row in self.between],
            "first_order_matrix": self.matrix.tolist(),
            "theta": self.theta.tolist(),
            "predicted_mu_first_order": self.theta.tolist(),
            "verdict": self.verdict.value,
            "positive_definite_small_eps": self.positive_definite_small_eps,
            "slope_one_component": self.slope_one_component,
            "complete_components": self.complete_components,
            "complete_components_forcing_instability": self.forcing_instability,
            "two_component_criterion": self.criterion_two_component,
            "two_component_criterion_unscaled": self.unscaled_criterion,
            "exact_theta_check": self.exact_theta_check,
        }


def _exact_theta_check(fom: FirstOrderMatrix, theta: np.ndarray) -> bool:
    s, k = fom.scaled_rational()
    p = char_poly_exact(k)
    for t in theta:
        x = Fraction(float(t) * s)
        delta = Fraction(1, 10**6) * (1 + abs(x))
        if p(x) != 0 and sturm_count(p, x - delta, x + delta) == 0:
            return False
    return True


def small_eps_verdict(g: PartitionedGraph) -> PerturbationReport:
    comp = connected_components(g)
    counts = h_edge_counts(g, comp)
    fom = first_order_matrix(counts, comp)
    theta = fom.theta()
    inertia = fom.exact_inertia()
    if inertia.n_neg > 0:
        verdict = FirstOrderVerdict.INDEFINITE
    elif inertia.n_zero > 0:
        verdict = FirstOrderVerdict.UNDETERMINED
    else:
        verdict = FirstOrderVerdict.POSITIVE_DEFINITE

    slope = None
    if comp.r == 1 and g.num_h > 0:
        slope = 2 * g.num_h / g.n

    complete = [i for i in range(comp.r) if is_complete_component(i, g, comp)]
    forcing = [i for i in complete if any(counts.between[i][j] for j in range(comp.r) if j != i)]

    report = PerturbationReport(
        r=comp.r, sizes=comp.sizes, within=counts.within, between=counts.between,
        matrix=np.array(fom.entries), theta=theta, verdict=verdict,
        slope_one_component=slope, complete_components=complete, forcing_instability=forcing,
    )
    if comp.r == 2:
        report.criterion_two_component = two_component_criterion(counts)
        report.unscaled_criterion = two_component_criterion_unscaled(counts)
    if comp.r <= 3:
        report.exact_theta_check = _exact_theta_check(fom, theta)
    return report


RICHARDSON_EPS = (1e-4, 2e-4, 4e-4)
RESIDUAL_FLOOR = 1e-12


@dataclass
class RichardsonCheck:
    eps: tuple[float, ...]
    theta: np.ndarray
    residuals: np.ndarray  # (len(eps), r)

    @property
    def ratios(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.residuals[1:] / self.residuals[:-1]

    def passed(self, low: float = 3.0, high: float = 5.0) -> bool:
        """Each residual pair either doubles-to-quadruples or sits below the floor."""
        res = self.residuals
        for k in range(res.shape[0] - 1):
            for i in range(res.shape[1]):
                if res[k + 1, i] <= RESIDUAL_FLOOR or res[k, i] <= RESIDUAL_FLOOR:
                    continue
                if not low <= res[k + 1, i] / res[k, i] <= high:
                    return False
        return True


def richardson_check(g: PartitionedGraph, eps_values=RICHARDSON_EPS) -> RichardsonCheck:
    """Residuals ``|mu_i(eps) - eps * theta_i|`` of the ``r`` near-zero eigenvalues.

    The near-zero eigenvalues are the ``r`` of smallest magnitude, matched to
    ``theta`` in ascending order.  An O(eps^2) error makes consecutive
    residuals at doubled eps grow by a factor near 4.
    """
    report = small_eps_verdict(g)
    op = build_operator(g)
    theta = report.theta
    r = report.r
    res = np.empty((len(eps_values), r))
    for k, eps in enumerate(eps_values):
        w = sym_eigenvalues(evaluate(op, eps))
        near = np.sort(w[np.argsort(np.abs(w), kind="stable")[:r]])
        res[k] = np.abs(near - eps * theta)
    return RichardsonCheck(tuple(eps_values), theta, res)
