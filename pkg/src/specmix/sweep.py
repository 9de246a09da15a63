"""Signature sweeps over an eps grid, random instances and experiment drivers.

Randomness
----------
Every instance draws from its own PCG64 stream,
``numpy.random.SeedSequence(seed, spawn_key=(index,))``, so instance ``k``
is the same regardless of how many instances run, in which order, or on
how many threads.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .detpoly import TransitionBounds, exact_transition_candidates, transition_bounds
from .errors import InfeasibleEdgeCount, SpecmixError, ZeroPolynomial
from .graph import PartitionedGraph
from .linalg import Inertia, count_signs, default_taus, sym_eigenvalues
from .operator import MixedOperator, build_operator

log = logging.getLogger(__name__)

CHUNK = 2000
CSV_COLUMNS = ["instance", "eps", "n_neg", "n_zero", "n_pos", "signature", "near_singular"]


def instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def eps_grid(eps_min: float, eps_max: float, eps_step: float) -> np.ndarray:
    """``eps_min, eps_min + step, ...`` up to ``eps_max`` inclusive (rounded to 12 decimals)."""
    if eps_step <= 0:
        raise ValueError("eps_step must be positive")
    if eps_max < eps_min:
        raise ValueError("eps_max must not be below eps_min")
    count = int(np.floor((eps_max - eps_min) / eps_step + 1e-9)) + 1
    return np.round(eps_min + eps_step * np.arange(count), 12)


@dataclass(frozen=True)
class SweepRecord:
    eps: float
    inertia: Inertia
    near_singular: bool = False


@dataclass
class SweepResult:
    records: list[SweepRecord]
    bounds: TransitionBounds | None = None

    @property
    def signatures(self) -> np.ndarray:
        return np.array([r.inertia.signature for r in self.records], dtype=int)

    @property
    def transitions_observed(self) -> int:
        """Signature changes between consecutive grid points that are not near-singular.

        A grid point sitting on a crossing shows an intermediate signature;
        skipping it keeps one crossing from counting twice.
        """
        s = np.array([r.inertia.signature for r in self.records if not r.near_singular], dtype=int)
        return int(np.count_nonzero(s[1:] != s[:-1]))

    @property
    def increases(self) -> list[int]:
        """Grid indices ``k`` with ``signature[k+1] > signature[k]``."""
        s = self.signatures
        return [int(k) for k in np.flatnonzero(s[1:] > s[:-1])]

    @property
    def monotone_nonincreasing(self) -> bool:
        return not self.increases

    @property
    def near_singular_count(self) -> int:
        return sum(r.near_singular for r in self.records)


def pencil_sweep(base, direction, grid, threads: int = 1) -> list[SweepRecord]:
    """Inertia of ``base + eps * direction`` at every grid value."""
    base = np.asarray(base, dtype=float)
    direction = np.asarray(direction, dtype=float)
    grid = np.asarray(grid, dtype=float)
    chunks = [grid[i:i + CHUNK] for i in range(0, len(grid), CHUNK)]

    def run(chunk):
        stack = base[None] + chunk[:, None, None] * direction[None]
        w = sym_eigenvalues(stack)
        taus = default_taus(stack)
        neg, zero, pos = count_signs(w, taus)
        near = np.any(np.abs(w) <= taus[:, None], axis=1)
        return [SweepRecord(float(e), Inertia(int(a), int(b), int(c)), bool(z))
                for e, a, b, c, z in zip(chunk, neg, zero, pos, near)]

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, chunks))
    else:
        parts = [run(c) for c in chunks]
    return [rec for part in parts for rec in part]


def signature_sweep(op: MixedOperator, grid, threads: int = 1, with_bounds: bool = True) -> SweepResult:
    grid = np.asarray(grid, dtype=float)
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be positive and strictly ascending")
    records = pencil_sweep(op.laplacian, op.adjacency, grid, threads)
    return SweepResult(records, transition_bounds(op) if with_bounds else None)


def random_partitioned_graph(rng: np.random.Generator, n_range=(10, 20), edge_rule: str = "dense",
                             p_saddle: float = 0.5) -> PartitionedGraph:
    """Random graph with uniformly many vertices and edges, classes by coin flip.

    ``edge_rule="dense"`` draws the edge count uniformly from
    ``[2n, n(n-1)/2]``; ``"any"`` from ``[0, n(n-1)/2]``.
    """
    n_lo, n_hi = n_range
    if n_lo < 2 or n_hi < n_lo:
        raise ValueError(f"bad vertex range {n_range}")
    n = int(rng.integers(n_lo, n_hi + 1))
    max_edges = n * (n - 1) // 2
    if edge_rule == "dense":
        lo = 2 * n
    elif edge_rule == "any":
        lo = 0
    else:
        raise ValueError(f"unknown edge rule {edge_rule!r}")
    if lo > max_edges:
        raise InfeasibleEdgeCount(f"n={n}: need at least {lo} edges but only {max_edges} pairs exist")
    m = int(rng.integers(lo, max_edges + 1))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = rng.choice(len(pairs), size=m, replace=False)
    saddle = rng.random(m) < p_saddle
    g_edges = [pairs[k] for k, s in zip(chosen, saddle) if not s]
    h_edges = [pairs[k] for k, s in zip(chosen, saddle) if s]
    return PartitionedGraph.from_edges(n, g_edges, h_edges)


def random_matrix_pair(rng: np.random.Generator, dim_range=(10, 20)) -> tuple[np.ndarray, np.ndarray]:
    """``(a a^T, b + b^T)`` for square ``a``, ``b`` with entries uniform on [-1, 1]."""
    lo, hi = dim_range
    if lo < 1 or hi < lo:
        raise ValueError(f"bad dimension range {dim_range}")
    d = int(rng.integers(lo, hi + 1))
    a = rng.uniform(-1.0, 1.0, size=(d, d))
    b = rng.uniform(-1.0, 1.0, size=(d, d))
    gram = a @ a.T
    gram = np.triu(gram) + np.triu(gram, 1).T
    return gram, b + b.T


class Mode(str, Enum):
    GRAPH = "graph"
    MATRIX_PAIR = "matrix"


@dataclass(frozen=True)
class ExperimentConfig:
    mode: Mode = Mode.GRAPH
    instances: int = 50
    n_min: int = 5
    n_max: int = 20
    edge_rule: str = "dense"
    eps_min: float = 0.01
    eps_max: float = 100.0
    eps_step: float = 0.01
    seed: int = 0
    exact_roots: bool = False
    threads: int = 1

    def __post_init__(self):
        if not 0 < self.eps_min <= self.eps_max:
            raise ValueError("need 0 < eps_min <= eps_max")
        if self.eps_step <= 0:
            raise ValueError("eps_step must be positive")
        object.__setattr__(self, "mode", Mode(self.mode))

    def grid(self) -> np.ndarray:
        return eps_grid(self.eps_min, self.eps_max, self.eps_step)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mode"] = self.mode.value
        return d


def graph_ensemble_config(**overrides) -> ExperimentConfig:
    """16 random graphs, 10 to 20 vertices."""
    return ExperimentConfig(**{"mode": Mode.GRAPH, "instances": 16, "n_min": 10, "n_max": 20, **overrides})


def pencil_ensemble_config(**overrides) -> ExperimentConfig:
    """16 random pencils ``a a^T + eps (b + b^T)``, dimension 10 to 20."""
    return ExperimentConfig(**{"mode": Mode.MATRIX_PAIR, "instances": 16, "n_min": 10, "n_max": 20, **overrides})


def bounds_ensemble_config(**overrides) -> ExperimentConfig:
    """50 random graphs, 5 to 20 vertices, with transition bounds."""
    return ExperimentConfig(**{"mode": Mode.GRAPH, "instances": 50, "n_min": 5, "n_max": 20,
                               "exact_roots": True, **overrides})


@dataclass
class InstanceResult:
    index: int
    sweep: SweepResult
    graph: PartitionedGraph | None = None
    dim: int = 0
    exact_roots: int | None = None
    identically_singular: bool = False

    def summary(self) -> dict:
        d = {
            "instance": self.index,
            "dim": self.dim,
            "transitions_observed": self.sweep.transitions_observed,
            "monotone_nonincreasing": self.sweep.monotone_nonincreasing,
            "signature_first": int(self.sweep.signatures[0]),
            "signature_last": int(self.sweep.signatures[-1]),
            "near_singular_points": self.sweep.near_singular_count,
        }
        if self.graph is not None:
            d["num_g"] = self.graph.num_g
            d["num_h"] = self.graph.num_h
        if self.sweep.bounds is not None:
            d.update(self.sweep.bounds.to_dict())
            d["within_bounds"] = self.sweep.transitions_observed <= self.sweep.bounds.combined
        if self.exact_roots is not None or self.identically_singular:
            d["exact_positive_roots"] = self.exact_roots
            d["identically_singular"] = self.identically_singular
        return d


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    instances: list[InstanceResult]
    skipped: list[dict] = field(default_factory=list)

    @property
    def violations(self) -> list[InstanceResult]:
        """Instances whose signature increases somewhere along the grid."""
        return [r for r in self.instances if not r.sweep.monotone_nonincreasing]

    def summary(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "instances": [r.summary() for r in self.instances],
            "skipped": self.skipped,
            "monotonicity_violations": [r.index for r in self.violations],
            "conjecture_corroborated": not self.violations,
            "all_within_bounds": all(r.summary().get("within_bounds", True) for r in self.instances),
        }


def _run_instance(cfg: ExperimentConfig, index: int, grid: np.ndarray) -> InstanceResult:
    rng = instance_rng(cfg.seed, index)
    if cfg.mode is Mode.MATRIX_PAIR:
        a, b = random_matrix_pair(rng, (cfg.n_min, cfg.n_max))
        return InstanceResult(index, SweepResult(pencil_sweep(a, b, grid, cfg.threads)), dim=a.shape[0])
    g = random_partitioned_graph(rng, (cfg.n_min, cfg.n_max), cfg.edge_rule)
    op = build_operator(g)
    result = InstanceResult(index, signature_sweep(op, grid, cfg.threads), graph=g, dim=g.n)
    if cfg.exact_roots:
        try:
            result.exact_roots = len(exact_transition_candidates(op))
        except ZeroPolynomial:
            result.identically_singular = True
    return result


def run_figure_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    grid = cfg.grid()
    out = ExperimentResult(cfg, [])
    for index in range(cfg.instances):
        try:
            out.instances.append(_run_instance(cfg, index, grid))
        except SpecmixError as exc:
            log.warning("instance %d skipped: %s", index, exc)
            out.skipped.append({"instance": index, "error": f"{type(exc).__name__}: {exc}"})
    return out


def instance_graph(cfg: ExperimentConfig, index: int) -> PartitionedGraph:
    """Regenerate the graph of a GRAPH-mode instance without sweeping it."""
    rng = instance_rng(cfg.seed, index)
    return random_partitioned_graph(rng, (cfg.n_min, cfg.n_max), cfg.edge_rule)


# -- output -------------------------------------------------------------------

def _header(config: dict) -> str:
    return "# config " + json.dumps(config, sort_keys=True) + "\n"


def records_to_csv(rows, config: dict | None = None) -> str:
    """CSV text for ``(instance, SweepRecord)`` pairs, config echoed as a comment line."""
    buf = io.StringIO()
    if config is not None:
        buf.write(_header(config))
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for index, rec in rows:
        i = rec.inertia
        writer.writerow([index, repr(rec.eps), i.n_neg, i.n_zero, i.n_pos, i.signature,
                         int(rec.near_singular)])
    return buf.getvalue()


def experiment_csv(result: ExperimentResult) -> str:
    rows = ((r.index, rec) for r in result.instances for rec in r.sweep.records)
    return records_to_csv(rows, result.config.to_dict())


def experiment_json(result: ExperimentResult) -> str:
    return json.dumps(result.summary(), indent=2, sort_keys=True) + "\n"


def dump_counterexample(inst: InstanceResult, cfg: ExperimentConfig, directory) -> Path:
    """Write a monotonicity violation with everything needed to reproduce it."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"counterexample_seed{cfg.seed}_instance{inst.index}.json"
    payload = {
        "config": cfg.to_dict(),
        "instance": inst.index,
        "graph": inst.graph.to_text() if inst.graph is not None else None,
        "matrices": None,
        "increases_at": [inst.sweep.records[k].eps for k in inst.sweep.increases],
        "trace": [[rec.eps, *rec.inertia.as_tuple(), int(rec.near_singular)] for rec in inst.sweep.records],
    }
    if inst.graph is None:
        a, b = random_matrix_pair(instance_rng(cfg.seed, inst.index), (cfg.n_min, cfg.n_max))
        payload["matrices"] = {"a": a.tolist(), "b": b.tolist()}
    path.write_text(json.dumps(payload) + "\n")
    return path
