"""Linear gradient flow ``dq/dt = -M(eps) q`` integrated with classical RK4.

The flow is the gradient of the potential ``V(q) = q.M(eps).q / 2``, so
``V`` can only decrease along exact trajectories.  Negative eigenvalues of
``M(eps)`` make the origin unstable; a positive definite ``M(eps)`` makes it
attracting; zero eigenvalues leave a subspace of equilibria that the flow
projects onto.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import StepTooLarge
from .graph import PartitionedGraph
from .linalg import Inertia, ZeroTolerance, check_symmetric, count_signs, jacobi_eigh
from .operator import build_operator, evaluate

DT = 0.01
T_END = 50.0
DECADES = 1e3
RK4_LIMIT = 2.5
ENERGY_TOL = 1e-8
KERNEL_TOL = 1e-6
MAX_STEPS = 400_000


class Verdict(str, Enum):
    DECAYS = "decays"
    GROWS = "grows"
    CONVERGES = "converges"  # to the projection onto the kernel
    INCONCLUSIVE = "inconclusive"


@dataclass
class FlowResult:
    initial_norm: float
    final_norm: float
    classification: Verdict
    horizon: float
    step: float
    overflow: bool = False
    times: np.ndarray = field(default=None, repr=False)
    norms: np.ndarray = field(default=None, repr=False)
    potentials: np.ndarray = field(default=None, repr=False)
    final_state: np.ndarray = field(default=None, repr=False)

    def energy_nonincreasing(self, tol: float = ENERGY_TOL) -> bool:
        """Potential never rises by more than ``tol`` (relative to its size) per step."""
        v = self.potentials[np.isfinite(self.potentials)]
        if v.size < 2:
            return True
        rise = np.diff(v)
        return bool(np.all(rise <= tol * np.maximum(1.0, np.abs(v[:-1]))))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "norm", "potential"])
        for t, nrm, pot in zip(self.times, self.norms, self.potentials):
            w.writerow([repr(float(t)), repr(float(nrm)), repr(float(pot))])
        return buf.getvalue()


def spectral_radius_bound(m: np.ndarray) -> float:
    """Cheap upper bound on the spectral radius: min of max row sum and Frobenius norm."""
    return float(min(np.abs(m).sum(axis=1).max(initial=0.0), np.linalg.norm(m)))


def classify(initial_norm: float, final_norm: float) -> Verdict:
    if final_norm <= initial_norm / DECADES:
        return Verdict.DECAYS
    if final_norm >= initial_norm * DECADES:
        return Verdict.GROWS
    return Verdict.INCONCLUSIVE


def _rk4_batch(m: np.ndarray, q: np.ndarray, dt: float, steps: int):
    """Integrate every column of ``q``; returns norms, potentials (steps+1, k), final state, overflow step."""
    k = q.shape[1]
    norms = np.full((steps + 1, k), np.nan)
    pots = np.full((steps + 1, k), np.nan)
    first_bad = np.full(k, -1)
    norms[0] = np.linalg.norm(q, axis=0)
    pots[0] = 0.5 * np.einsum("ik,ik->k", q, m @ q)
    half = 0.5 * dt
    with np.errstate(over="ignore", invalid="ignore"):
        for s in range(1, steps + 1):
            k1 = -(m @ q)
            k2 = -(m @ (q + half * k1))
            k3 = -(m @ (q + half * k2))
            k4 = -(m @ (q + dt * k3))
            q = q + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            nrm = np.linalg.norm(q, axis=0)
            pot = 0.5 * np.einsum("ik,ik->k", q, m @ q)
            bad = ~(np.isfinite(nrm) & np.isfinite(pot))
            newly = bad & (first_bad < 0)
            first_bad[newly] = s
            ok = first_bad < 0
            norms[s, ok] = nrm[ok]
            pots[s, ok] = pot[ok]
            if not ok.any():
                break
    return norms, pots, q, first_bad


def integrate_matrix_flow(m, q0, dt: float = DT, t_end: float = T_END) -> list[FlowResult]:
    """RK4 trajectories of ``dq/dt = -m q`` for each column of ``q0`` (or a single vector)."""
    m = check_symmetric(m)
    q0 = np.asarray(q0, dtype=float)
    q = q0.reshape(m.shape[0], -1).copy()
    if np.any(np.linalg.norm(q, axis=0) == 0):
        raise ValueError("initial condition must be nonzero")
    rho = spectral_radius_bound(m)
    if dt * rho >= RK4_LIMIT:
        raise StepTooLarge(f"dt * spectral radius bound = {dt * rho:.3g} >= {RK4_LIMIT}")
    steps = max(1, int(round(t_end / dt)))
    norms, pots, final, first_bad = _rk4_batch(m, q, dt, steps)
    times = dt * np.arange(steps + 1)
    out = []
    for j in range(q.shape[1]):
        last = steps if first_bad[j] < 0 else first_bad[j] - 1
        overflow = first_bad[j] >= 0
        verdict = Verdict.GROWS if overflow else classify(norms[0, j], norms[last, j])
        out.append(FlowResult(
            initial_norm=float(norms[0, j]), final_norm=float(norms[last, j]), classification=verdict,
            horizon=float(times[last]), step=dt, overflow=bool(overflow),
            times=times[:last + 1], norms=norms[:last + 1, j], potentials=pots[:last + 1, j],
            final_state=None if overflow else final[:, j].copy(),
        ))
    return out


def integrate_flow(op, eps: float, q0, dt: float = DT, t_end: float = T_END) -> FlowResult:
    """Single RK4 trajectory of ``dq/dt = -M(eps) q`` from ``q0``."""
    q0 = np.asarray(q0, dtype=float)
    if q0.ndim != 1:
        raise ValueError("q0 must be a vector")
    return integrate_matrix_flow(evaluate(op, eps), q0, dt, t_end)[0]


def random_unit_vectors(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    """``k`` columns drawn uniformly from the unit sphere in R^n."""
    x = rng.standard_normal((n, k))
    return x / np.linalg.norm(x, axis=0)


@dataclass
class CrossCheckReport:
    eps: float
    inertia: Inertia
    near_singular: bool
    expected: Verdict
    empirical: list[Verdict]
    dt: float
    t_end: float
    energy_ok: bool

    @property
    def majority(self) -> Verdict:
        return Counter(self.empirical).most_common(1)[0][0]

    @property
    def agrees(self) -> bool:
        return self.majority is self.expected

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "inertia": self.inertia.to_dict(),
            "near_singular": self.near_singular,
            "expected": self.expected.value,
            "empirical": [v.value for v in self.empirical],
            "majority": self.majority.value,
            "agrees": self.agrees,
            "dt": self.dt,
            "t_end": self.t_end,
            "energy_nonincreasing": self.energy_ok,
        }


def stability_cross_check(g: PartitionedGraph, eps: float, trials: int = 3, seed: int = 0,
                          dt: float | None = None, t_end: float | None = None) -> CrossCheckReport:
    """Compare RK4 trajectories from random unit initial data with the inertia of ``M(eps)``.

    When ``dt``/``t_end`` are omitted the step is set to ``2 / rho`` (``rho`` a
    spectral-radius bound) and the horizon long enough for the slowest
    nonzero mode to move the norm by more than three decades.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    m = evaluate(build_operator(g), eps)
    w, v = jacobi_eigh(m, vectors=True)
    tau = ZeroTolerance.default_for(m).tau
    neg, zero, pos = count_signs(w, tau)
    inertia = Inertia(int(neg), int(zero), int(pos))
    nonzero = np.abs(w) > tau
    near_singular = bool(np.any(~nonzero))
    if inertia.n_neg:
        expected = Verdict.GROWS
    elif inertia.n_zero:
        expected = Verdict.CONVERGES
    else:
        expected = Verdict.DECAYS

    rho = spectral_radius_bound(m)
    if dt is None:
        dt = 2.0 / rho if rho > 0 else DT
    if t_end is None:
        slowest = float(np.min(np.abs(w[nonzero]))) if nonzero.any() else 0.0
        t_end = T_END if slowest == 0 else max(T_END, 16.0 / slowest)
        t_end = min(t_end, MAX_STEPS * dt)

    rng = np.random.default_rng(np.random.SeedSequence(seed))
    q0 = random_unit_vectors(rng, g.n, trials)
    flows = integrate_matrix_flow(m, q0, dt, t_end)
    kernel = v[:, ~nonzero]
    empirical = []
    for j, flow in enumerate(flows):
        verdict = flow.classification
        if verdict is Verdict.INCONCLUSIVE and kernel.shape[1] and flow.final_state is not None:
            target = kernel @ (kernel.T @ q0[:, j])
            if np.linalg.norm(flow.final_state - target) < KERNEL_TOL:
                verdict = Verdict.CONVERGES
        empirical.append(verdict)
    energy_ok = all(f.energy_nonincreasing() for f in flows)
    return CrossCheckReport(float(eps), inertia, near_singular, expected, empirical, dt, t_end, energy_ok)
