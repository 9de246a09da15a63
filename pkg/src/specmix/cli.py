"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 input error, 3 numerical failure.
Every command starts its standard output with a ``# specmix`` header line
echoing the fully resolved configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .detpoly import det_polynomial, isolate_positive_roots, transition_bounds
from .dynamics import DT, T_END, integrate_matrix_flow, random_unit_vectors, stability_cross_check
from .errors import InputError, NumericalError
from .graph import parse_graph
from .linalg import ZeroTolerance, count_signs, sym_eigenvalues
from .operator import build_operator, evaluate
from .perturbation import small_eps_verdict
from .sweep import (ExperimentConfig, Mode, dump_counterexample, eps_grid, experiment_csv, experiment_json,
                    instance_graph, records_to_csv, run_figure_experiment, signature_sweep)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_threads() -> int:
    raw = os.environ.get("SPECMIX_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"SPECMIX_THREADS must be an integer, got {raw!r}") from None


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_graph(text)


def _header(args: argparse.Namespace, out) -> None:
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    out.write(f"# specmix {__version__} {json.dumps(cfg, sort_keys=True, default=str)}\n")


def _fmt(x: Fraction) -> str:
    return f"{float(x):.9f}"


def cmd_spectrum(args, out):
    op = build_operator(_load(args.graph))
    m = evaluate(op, args.eps)
    w = sym_eigenvalues(m)
    tau = ZeroTolerance.default_for(m).tau
    neg, zero, pos = count_signs(w, tau)
    out.write("eigenvalues " + " ".join(f"{x:.12g}" for x in w) + "\n")
    out.write(f"inertia {int(neg)} {int(zero)} {int(pos)}\n")
    out.write(f"signature {int(pos) - int(neg)}\n")


def cmd_perturb(args, out):
    report = small_eps_verdict(_load(args.graph))
    out.write(json.dumps(report.to_dict(), indent=2) + "\n")


def cmd_detpoly(args, out):
    op = build_operator(_load(args.graph))
    p = det_polynomial(op)
    out.write(" ".join(str(c) for c in p.coeffs) + "\n" if p.coeffs else "0\n")
    if p.is_zero():
        out.write("identically singular\n")
        return
    for lo, hi in isolate_positive_roots(p):
        out.write(f"root in ({_fmt(lo)}, {_fmt(hi)}]\n")


def cmd_bounds(args, out):
    b = transition_bounds(build_operator(_load(args.graph)))
    out.write(json.dumps(b.to_dict(), indent=2) + "\n")


def cmd_sweep(args, out):
    op = build_operator(_load(args.graph))
    grid = eps_grid(args.eps_min, args.eps_max, args.eps_step)
    res = signature_sweep(op, grid, threads=args.threads)
    config = {k: v for k, v in vars(args).items() if k != "func"}
    text = records_to_csv(((0, r) for r in res.records), config)
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        out.write(text)
    sys.stderr.write(f"transitions_observed {res.transitions_observed} "
                     f"monotone_nonincreasing {res.monotone_nonincreasing} "
                     f"bound_combined {res.bounds.combined}\n")


def cmd_conjecture(args, out):
    cfg = ExperimentConfig(
        mode=Mode(args.mode), instances=args.instances, n_min=args.n_min, n_max=args.n_max,
        eps_min=args.eps_min, eps_max=args.eps_max, eps_step=args.eps_step, seed=args.seed,
        exact_roots=args.exact_roots, threads=args.threads,
    )
    if args.dump_graphs:
        if cfg.mode is not Mode.GRAPH:
            raise UsageError("--dump-graphs needs --mode graph")
        d = Path(args.dump_graphs)
        d.mkdir(parents=True, exist_ok=True)
        for k in range(cfg.instances):
            (d / f"instance_{k:03d}.txt").write_text(instance_graph(cfg, k).to_text())
    result = run_figure_experiment(cfg)
    text = experiment_json(result)
    if args.json:
        Path(args.json).write_text(text)
    else:
        out.write(text)
    if args.csv:
        Path(args.csv).write_text(experiment_csv(result))
    for inst in result.violations:
        path = dump_counterexample(inst, cfg, args.counterexamples)
        sys.stderr.write(f"monotonicity violation dumped to {path}\n")
    summary = result.summary()
    sys.stderr.write(f"instances {len(result.instances)} violations {len(result.violations)} "
                     f"all_within_bounds {summary['all_within_bounds']}\n")


def cmd_dynamics(args, out):
    g = _load(args.graph)
    report = stability_cross_check(g, args.eps, trials=args.trials, seed=args.seed,
                                   dt=args.dt, t_end=args.t_end)
    out.write(json.dumps(report.to_dict(), indent=2) + "\n")
    if args.csv:
        rng = np.random.default_rng(np.random.SeedSequence(args.seed))
        q0 = random_unit_vectors(rng, g.n, args.trials)
        flows = integrate_matrix_flow(evaluate(build_operator(g), args.eps), q0, report.dt, report.t_end)
        base = Path(args.csv)
        for k, flow in enumerate(flows):
            path = base.with_name(f"{base.stem}_{k}{base.suffix or '.csv'}")
            path.write_text(flow.to_csv())


def cmd_selftest(args, out):
    from .selftest import run_selftest

    ok = run_selftest(out, seed=args.seed, instances=args.instances)
    return 0 if ok else 3


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="specmix", description="Spectra of L_G + eps*A_H for edge-partitioned graphs.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("-g", "--graph", required=True, help="edge-list file")
        sp.set_defaults(func=func)
        return sp

    sp = graph_cmd("spectrum", cmd_spectrum, "eigenvalues and inertia of M(eps)")
    sp.add_argument("--eps", type=float, required=True)
    graph_cmd("perturb", cmd_perturb, "first-order small-eps report")
    graph_cmd("detpoly", cmd_detpoly, "exact det(M(eps)) and its positive roots")
    graph_cmd("bounds", cmd_bounds, "signature-transition bounds")

    threads = _default_threads()
    sp = graph_cmd("sweep", cmd_sweep, "signature along an eps grid")
    sp.add_argument("--eps-min", type=float, default=0.01)
    sp.add_argument("--eps-max", type=float, default=100.0)
    sp.add_argument("--eps-step", type=float, default=0.01)
    sp.add_argument("--csv", help="write CSV here instead of standard output")
    sp.add_argument("--threads", type=int, default=threads)

    sp = sub.add_parser("conjecture", help="random-instance monotonicity and bounds experiment")
    sp.add_argument("--mode", choices=["graph", "matrix"], default="graph")
    sp.add_argument("--instances", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n-min", type=int, default=None)
    sp.add_argument("--n-max", type=int, default=20)
    sp.add_argument("--eps-min", type=float, default=0.01)
    sp.add_argument("--eps-max", type=float, default=100.0)
    sp.add_argument("--eps-step", type=float, default=0.01)
    sp.add_argument("--exact-roots", action="store_true", help="also isolate roots of det(M(eps))")
    sp.add_argument("--json", help="write the JSON summary here")
    sp.add_argument("--csv", help="write all sweep records here")
    sp.add_argument("--dump-graphs", help="directory for the generated graphs")
    sp.add_argument("--counterexamples", default="counterexamples")
    sp.add_argument("--threads", type=int, default=threads)
    sp.set_defaults(func=cmd_conjecture)

    sp = graph_cmd("dynamics", cmd_dynamics, "RK4 gradient flow versus spectral stability")
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--trials", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dt", type=float, default=None, help=f"step (default adaptive; plain flows use {DT})")
    sp.add_argument("--t-end", type=float, default=None, help=f"horizon (default adaptive, at least {T_END})")
    sp.add_argument("--csv", help="per-trajectory CSV path prefix")

    sp = sub.add_parser("selftest", help="oracle-equivalence checks")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--instances", type=int, default=20)
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    out = sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command == "conjecture" and args.n_min is None:
            args.n_min = 10 if args.mode == "matrix" else 5
        if getattr(args, "threads", 1) < 1:
            raise UsageError("--threads must be positive")
        _header(args, out)
        code = args.func(args, out)
        return code or 0
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    except (InputError, ValueError, OSError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except NumericalError as exc:
        sys.stderr.write(f"numerical failure: {type(exc).__name__}: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
