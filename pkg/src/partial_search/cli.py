"""Command-line entry point: ``pqs <command> [flags]``.

Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 no solution.
Any flag may also come from a JSON object passed with ``--config``; flags
given on the command line win.  ``PQS_THREADS`` caps curve parallelism.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from .core import make_geometry
from .errors import NoRoot, PartialSearchError
from .grk import grk_integer_schedule, grk_scaled
from .optimizers import curve, optimal
from .verify import run_all

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NO_SOLUTION = 0, 1, 2, 3

DEFAULTS = {
    "n": None,
    "k": None,
    "family": "lg",
    "parity": "odd",
    "alpha_min": 0.0,
    "alpha_max": math.pi,
    "alpha_step": 1e-3,
    "output": None,
    "format": "json",
    "seed": 0,
    "n_max": 4096,
    "trials": 100,
    "tol": 1e-10,
    "identity_tol": 1e-12,
}


class InputError(Exception):
    pass


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _parity(name: str) -> int:
    return {"odd": -1, "even": 1}[name]


def _emit(text: str, path: str | None) -> None:
    if path and path != "-":
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(record: dict) -> str:
    return json.dumps(record, indent=2) + "\n"


def _dump_csv_rows(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required")


def cmd_geometry(args) -> int:
    _require(args, "n", "k")
    g = make_geometry(args.n, args.k)
    record = {"N": g.N, "K": g.K, "b": g.b, "gamma": g.gamma, "theta1": g.theta1, "theta2": g.theta2}
    _emit(_dump_json(record), args.output)
    return EXIT_OK


def cmd_grk(args) -> int:
    _require(args, "k")
    if args.n is None:
        s = grk_scaled(args.k)
        record = {"K": args.k, "alpha": s.alpha, "eta": s.eta, "R": s.R}
    else:
        geom = make_geometry(args.n, args.k)
        sched = grk_integer_schedule(geom)
        record = {
            "N": geom.N,
            "K": geom.K,
            "b": geom.b,
            "j0": sched.j0,
            "j1": sched.j1,
            "j2": sched.j2,
            "total_queries": sched.total_queries,
            "full_search_queries": math.pi / 4 * math.sqrt(geom.N),
            "success_probability": sched.success_probability,
            "a_u": sched.final_state.a_u,
            "alpha": sched.alpha,
            "eta": sched.eta,
            "R": sched.R,
        }
    _emit(_dump_json(record), args.output)
    return EXIT_OK


def cmd_optimize(args) -> int:
    _require(args, "k")
    s = optimal(args.family, args.k, _parity(args.parity))
    record = {
        "family": s.family,
        "K": s.K,
        "parity": args.parity,
        "alpha": s.alpha,
        "beta": s.beta,
        "delta": s.delta,
        "eta": s.eta,
        "R": s.R,
    }
    if args.format == "csv":
        keys = list(record)
        text = _dump_csv_rows(keys, [[record[k] for k in keys]])
    else:
        text = _dump_json(record)
    _emit(text, args.output)
    return EXIT_OK


def _threads() -> int:
    raw = os.environ.get("PQS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"PQS_THREADS must be an integer, got {raw!r}") from None


def cmd_curve(args) -> int:
    _require(args, "k")
    if not args.alpha_step > 0:
        raise InputError("--alpha-step must be positive")
    if args.alpha_max < args.alpha_min:
        raise InputError("--alpha-max must not be below --alpha-min")
    count = int(math.floor((args.alpha_max - args.alpha_min) / args.alpha_step + 1e-9)) + 1
    grid = args.alpha_min + args.alpha_step * np.arange(count)
    # alpha = pi is one full local lap, excluded like the optimizers do
    grid = grid[grid < math.pi]
    result = curve(args.family, args.k, _parity(args.parity), grid, workers=_threads())
    if not result.points:
        print(f"no solvable point on the grid ({result.omitted} omitted)", file=sys.stderr)
        return EXIT_NO_SOLUTION
    rows = [[p.alpha, p.eta, p.R] for p in result.points]
    _emit(_dump_csv_rows(["alpha", "eta", "R"], rows), args.output)
    if result.omitted:
        print(f"omitted {result.omitted} grid points without a root", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_all(
        n_max=args.n_max,
        trials=args.trials,
        seed=args.seed,
        tolerance=args.tol,
        identity_tolerance=args.identity_tol,
    )
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append("ALL PASS" if ok else "VERIFICATION FAILED")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "geometry": cmd_geometry,
    "grk": cmd_grk,
    "optimize": cmd_optimize,
    "curve": cmd_curve,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pqs", description="Quantum partial search toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *flags):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON file with flag values")
        p.add_argument("--output", "-o", help="output file (default stdout)")
        for flag in flags:
            flag(p)
        return p

    def n(p):
        p.add_argument("--n", type=int, help="number of items N")

    def k(p):
        p.add_argument("--k", type=int, help="number of blocks K")

    def family(p):
        p.add_argument("--family", type=str.lower, choices=["lg", "glg", "lgl"])

    def parity(p):
        p.add_argument("--parity", choices=["odd", "even"])

    def fmt(p):
        p.add_argument("--format", choices=["json", "csv"])

    def grid(p):
        p.add_argument("--alpha-min", type=float)
        p.add_argument("--alpha-max", type=float)
        p.add_argument("--alpha-step", type=float)

    def verify(p):
        p.add_argument("--n-max", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--tol", type=float, help="tolerance for the reduced-vs-full checks")
        p.add_argument("--identity-tol", type=float)

    add("geometry", "print N, K, b and the angles", n, k)
    add("grk", "GRK schedule: scaled with --k, integer with --n and --k", n, k)
    add("optimize", "optimum of one sequence family", k, family, parity, fmt)
    add("curve", "CSV of R versus alpha", k, family, parity, grid)
    add("verify", "reduced-vs-full and identity checks", verify)
    for p in sub.choices.values():
        p.set_defaults(**{key: None for key in DEFAULTS if key not in ("output",)})
    return parser


def _apply_config(args) -> None:
    overrides = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                overrides = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(overrides, dict):
            raise InputError("config must be a JSON object")
    for key, default in DEFAULTS.items():
        if getattr(args, key, None) is None:
            value = overrides.get(key, overrides.get(key.replace("_", "-"), default))
            setattr(args, key, value)
    if isinstance(args.family, str):
        args.family = args.family.lower()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return COMMANDS[args.command](args)
    except NoRoot as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except (PartialSearchError, InputError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
