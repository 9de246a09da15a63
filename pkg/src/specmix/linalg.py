"""Dense symmetric eigenvalues and inertia in floating point.

The eigensolver is a cyclic Jacobi method with threshold pivoting.  It is
vectorised over a leading batch axis so that a whole parameter grid of
small matrices is diagonalised in one pass, one plane rotation at a time
across all batch members.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence

MAX_SWEEPS = 100
OFF_DIAGONAL_RTOL = 1e-12
DEFAULT_ZERO_RTOL = 1e-9


@dataclass(frozen=True)
class Inertia:
    """Counts of negative, zero and positive eigenvalues (with multiplicity)."""

    n_neg: int
    n_zero: int
    n_pos: int

    @property
    def dim(self) -> int:
        return self.n_neg + self.n_zero + self.n_pos

    @property
    def signature(self) -> int:
        return self.n_pos - self.n_neg

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_neg, self.n_zero, self.n_pos)

    def to_dict(self) -> dict:
        return {"n_neg": self.n_neg, "n_zero": self.n_zero, "n_pos": self.n_pos,
                "signature": self.signature}


@dataclass(frozen=True)
class ZeroTolerance:
    """Absolute threshold below which an eigenvalue is classified as zero."""

    tau: float

    def __post_init__(self):
        if not self.tau >= 0:
            raise ValueError(f"tolerance must be nonnegative, got {self.tau}")

    @classmethod
    def default_for(cls, m) -> "ZeroTolerance":
        """Scale-aware default ``1e-9 * max(1, ||m||_F)``."""
        return cls(DEFAULT_ZERO_RTOL * max(1.0, float(np.linalg.norm(np.asarray(m, dtype=float)))))


def check_symmetric(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {m.shape}")
    if not np.array_equal(m, np.swapaxes(m, -1, -2)):
        raise ValueError("matrix is not symmetric")
    return m


def _off_norm(a: np.ndarray) -> np.ndarray:
    # a has layout (n, n, batch)
    iu = np.triu_indices(a.shape[0], 1)
    upper = a[iu]
    return np.sqrt(2.0 * np.einsum("kb,kb->b", upper, upper))


def jacobi_eigh(stack, vectors: bool = False, max_sweeps: int = MAX_SWEEPS):
    """Cyclic Jacobi diagonalisation of a stack of symmetric matrices.

    Parameters
    ----------
    stack : array_like, shape (..., n, n)
        Symmetric matrices.
    vectors : bool
        Also accumulate the rotations into orthonormal eigenvectors.
    max_sweeps : int
        Sweep budget; :class:`NoConvergence` is raised if any matrix still
        has off-diagonal Frobenius norm above ``1e-12 * (1 + ||m||_F)``.

    Returns
    -------
    w : ndarray, shape (..., n)
        Eigenvalues in ascending order.
    v : ndarray, shape (..., n, n)
        Eigenvectors as columns, only when ``vectors`` is true.
    """
    m = check_symmetric(stack)
    batch_shape = m.shape[:-2]
    n = m.shape[-1]
    flat = m.reshape((-1, n, n))
    bsz = flat.shape[0]
    a = np.moveaxis(flat, 0, -1).copy(order="C")
    # rows of vt are the eigenvector columns, kept row-major for contiguous updates
    vt = np.repeat(np.eye(n)[:, :, None], bsz, axis=2) if vectors else None

    frob = np.sqrt(np.einsum("ijb,ijb->b", a, a))
    contract = OFF_DIAGONAL_RTOL * (1.0 + frob)
    iu = np.triu_indices(n, 1)
    polish = False
    for sweep in range(max_sweeps):
        off = _off_norm(a)
        if np.all(off <= contract):
            if polish or np.all(off == 0):
                break
            # one more sweep after reaching the contract: convergence is quadratic
            polish = True
        if sweep < 3:
            thresh = 0.2 * np.abs(a[iu]).sum(axis=0) / n**2
        else:
            thresh = np.zeros(bsz)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q].copy()
                rot = np.abs(apq) > thresh
                if not rot.any():
                    continue
                safe = np.where(rot, apq, 1.0)
                with np.errstate(over="ignore"):
                    theta = (a[q, q] - a[p, p]) / (2.0 * safe)
                    sgn = np.where(theta >= 0, 1.0, -1.0)
                    t = sgn / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
                t = np.where(rot, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                app = a[p, p].copy()
                aqq = a[q, q].copy()
                rp = a[p].copy()
                rq = a[q].copy()
                a[p] = c * rp - s * rq
                a[q] = s * rp + c * rq
                # symmetry: outside the (p, q) block the new columns equal the new rows
                a[:, p] = a[p]
                a[:, q] = a[q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = np.where(rot, 0.0, apq)
                a[q, p] = a[p, q]
                if vt is not None:
                    vp = vt[p].copy()
                    vt[p] = c * vp - s * vt[q]
                    vt[q] = s * vp + c * vt[q]
    else:
        off = _off_norm(a)
        if not np.all(off <= contract):
            worst = float(np.max(off / (1.0 + frob)))
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps "
                                f"(relative off-diagonal norm {worst:.3e})")

    w = np.moveaxis(a[np.arange(n), np.arange(n)], -1, 0)
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1).reshape(batch_shape + (n,))
    if vt is None:
        return w
    vecs = np.moveaxis(vt, -1, 0).transpose(0, 2, 1)
    vecs = np.take_along_axis(vecs, order[:, None, :], axis=-1)
    return w, vecs.reshape(batch_shape + (n, n))


def sym_eigenvalues(m) -> np.ndarray:
    """Ascending eigenvalues of a symmetric matrix (or a stack of them)."""
    return jacobi_eigh(m)


def count_signs(w: np.ndarray, tau) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Negative/zero/positive counts along the last axis of eigenvalue arrays."""
    tau = np.asarray(tau, dtype=float)[..., None]
    neg = np.count_nonzero(w < -tau, axis=-1)
    pos = np.count_nonzero(w > tau, axis=-1)
    return neg, w.shape[-1] - neg - pos, pos


def inertia_of(m, tol: ZeroTolerance | None = None) -> Inertia:
    m = check_symmetric(m)
    if tol is None:
        tol = ZeroTolerance.default_for(m)
    neg, zero, pos = count_signs(sym_eigenvalues(m), tol.tau)
    return Inertia(int(neg), int(zero), int(pos))


def default_taus(stack: np.ndarray) -> np.ndarray:
    """Per-matrix default zero tolerance for a stack of shape (..., n, n)."""
    return DEFAULT_ZERO_RTOL * np.maximum(1.0, np.sqrt(np.einsum("...ij,...ij->...", stack, stack)))


def weyl_gap_check(a, b, eps: float) -> float:
    """Largest displacement of sorted eigenvalues when ``a`` becomes ``a + eps*b``.

    Weyl's inequality bounds the result by ``|eps| * ||b||_2 <= |eps| * ||b||_F``.
    """
    a = check_symmetric(a)
    b = check_symmetric(b)
    if a.shape != b.shape:
        raise ValueError("dimension mismatch")
    pair = np.stack([a, a + eps * b])
    w = sym_eigenvalues(pair)
    return float(np.max(np.abs(w[1] - w[0]))) if a.shape[0] else 0.0
