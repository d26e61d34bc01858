"""Command-line entry point: ``gendiscord {compute,sweep,classify}``.

Exit codes: 0 success (or classical), 1 nonclassical (classify only),
2 invalid input or numerical-integrity failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

import numpy as np

from ._backend import BACKEND
from .discord import OptimizerConfig, gamma_discord, is_classical
from .files import GammaEntry, RunReport, load_state
from .qcore import InvalidPartitionError, InvalidStateError, NumericalIntegrityError, Partition, all_partitions
from .states import SWEEPABLE, make_state, parse_family

EXIT_OK = 0
EXIT_NONCLASSICAL = 1
EXIT_ERROR = 2


class UsageError(Exception):
    pass


def _config(args) -> OptimizerConfig:
    return OptimizerConfig(
        restarts=args.restarts,
        max_iterations=args.max_iters,
        objective_tolerance=args.tol,
        initial_step=args.step,
        master_seed=args.seed,
    )


def _config_echo(cfg: OptimizerConfig) -> dict:
    return {
        "seed": cfg.master_seed,
        "restarts": "auto" if cfg.restarts is None else cfg.restarts,
        "max_iterations": cfg.max_iterations,
        "objective_tolerance": cfg.objective_tolerance,
        "initial_step": cfg.initial_step,
        "backend": BACKEND,
    }


def _load_input(args):
    if bool(args.state) == bool(args.family):
        raise UsageError("exactly one of --state FILE or --family SPEC is required")
    if args.state:
        return load_state(args.state), {"path": str(args.state)}
    spec = parse_family(args.family, default_seed=args.seed)
    return make_state(spec), {"family": spec.describe()}


def _entry(res, elapsed=None) -> GammaEntry:
    return GammaEntry(
        partition=res.gamma.label,
        value=float(res.value),
        restart_min=float(min(res.restart_values)),
        restart_max=float(max(res.restart_values)),
        restarts=len(res.restart_values),
        evaluations=int(res.evaluations),
        angles=[float(a) for a in res.best_params],
        wall_time_s=elapsed,
    )


def run_partitions(rho, partitions, cfg, timing=False):
    results, entries = [], []
    for g in partitions:
        t0 = time.perf_counter()
        res = gamma_discord(rho, g, cfg)
        elapsed = round(time.perf_counter() - t0, 6) if timing else None
        results.append(res)
        entries.append(_entry(res, elapsed))
    return results, entries


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_compute(args) -> int:
    rho, descriptor = _load_input(args)
    cfg = _config(args)
    if args.partition:
        partitions = [Partition.from_label(args.partition, rho.n_parties)]
    else:
        partitions = all_partitions(rho.n_parties)
    results, entries = run_partitions(rho, partitions, cfg, args.timing)
    genuine = argmin = None
    if not args.partition:
        best = min(results, key=lambda r: r.value)
        genuine, argmin = float(best.value), best.gamma.label
    report = RunReport(descriptor, _config_echo(cfg), entries, genuine, argmin)
    fmt = args.format
    if fmt == "json":
        text = report.to_json()
    elif fmt == "csv":
        text = report.to_csv()
    else:
        text = report.to_table()
    _emit(text, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = parse_family(args.family, default_seed=args.seed)
    if spec.family not in SWEEPABLE:
        raise UsageError(f"family {spec.family!r} has no sweepable parameter (sweepable: {', '.join(SWEEPABLE)})")
    param = args.param or SWEEPABLE[spec.family]
    if param != SWEEPABLE[spec.family]:
        raise UsageError(f"family {spec.family!r} sweeps {SWEEPABLE[spec.family]!r}, not {param!r}")
    if args.steps < 1:
        raise UsageError("--steps must be >= 1")
    if args.start > args.stop:
        raise UsageError("--from must not exceed --to")
    cfg = _config(args)
    values = np.linspace(args.start, args.stop, args.steps)
    partitions = all_partitions(len(spec.resolved_dims()))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([param] + [f"D_{g.label}" for g in partitions] + ["genuine", "argmin"])
    for v in values:
        rho = make_state(spec.with_param(param, float(v)))
        results, _ = run_partitions(rho, partitions, cfg)
        best = min(results, key=lambda r: r.value)
        w.writerow([repr(float(v))] + [repr(float(r.value)) for r in results] + [repr(float(best.value)), best.gamma.label])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    rho, descriptor = _load_input(args)
    cfg = _config(args)
    verdict = is_classical(rho, cfg, args.classical_tol)
    payload = {
        "input": descriptor,
        "config": _config_echo(cfg),
        "classical": verdict.classical,
        "genuine": float(verdict.genuine_value),
    }
    if verdict.classical:
        payload["witness"] = {
            "partition": verdict.witness_gamma.label,
            "angles": [float(a) for a in verdict.witness_params],
            "disturbance": float(verdict.disturbance),
        }
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [
            f"verdict: {'classical' if verdict.classical else 'nonclassical'}",
            f"genuine discord: {verdict.genuine_value:.10f}",
        ]
        if verdict.classical:
            wit = payload["witness"]
            lines.append(f"witness partition: {wit['partition']}")
            lines.append("witness angles: " + " ".join(f"{a:.12g}" for a in wit["angles"]))
            lines.append(f"max entry change under dephasing: {wit['disturbance']:.3e}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if verdict.classical else EXIT_NONCLASSICAL


def _common(p: argparse.ArgumentParser, state_input=True):
    if state_input:
        p.add_argument("--state", metavar="FILE", help="JSON state file with keys dims, re, im")
    p.add_argument("--family", metavar="SPEC", help="named state, e.g. ghz:n=3 or werner:z=0.5")
    p.add_argument("--restarts", type=int, default=None, help="restarts per partition (default: 16, or 48 when the measured dimension is >= 4)")
    p.add_argument("--max-iters", type=int, default=2000, help="simplex iterations per restart")
    p.add_argument("--tol", type=float, default=1e-9, help="objective-spread stopping tolerance")
    p.add_argument("--step", type=float, default=0.3, help="initial simplex edge in radians")
    p.add_argument("--seed", type=int, default=0, help="master seed (also seeds random state families)")
    p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gendiscord", description="Genuine multipartite quantum discord.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="discord for every partition (or one) of a state")
    _common(p)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--partition", metavar="LABEL", help='measured subset, e.g. "1" or "12"; comma-separated for N >= 10')
    grp.add_argument("--all-partitions", action="store_true", help="minimize over every partition (default)")
    p.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p.add_argument("--timing", action="store_true", help="record wall time per partition (reports are then not byte-stable)")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="CSV of discord values along a one-parameter family")
    _common(p, state_input=False)
    p.add_argument("--param", help="swept parameter (z for werner, p for depolarized-ghz)")
    p.add_argument("--from", dest="start", type=float, default=0.0)
    p.add_argument("--to", dest="stop", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=11)
    p.set_defaults(func=cmd_sweep, format="csv")

    p = sub.add_parser("classify", help="decide whether a state is genuinely multipartite classical")
    _common(p)
    p.add_argument("--classical-tol", type=float, default=1e-5, help="discord threshold for a classical verdict")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidStateError, InvalidPartitionError, NumericalIntegrityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
