"""Command line front end.

    hyperconn compute FILE [--tol --max-iter --restarts --seed --jobs --format --output]
    hyperconn verify  FILE [--slack ...solver flags]
    hyperconn gen     complete --n N --k K | fano | random --n N --k K --m M [--seed S --connected]
    hyperconn oracle  FILE --grid M [--per-j]

Exit codes: 0 ok, 1 unreadable or malformed input, 2 invalid parameters,
3 some subproblem hit the iteration cap, 4 some bound failed.

The json format is one document per run with fixed top-level keys
``input``, ``config``, ``alpha``, ``argmin_j``, ``per_j`` and, where
relevant, ``bounds``, ``oracle`` and ``timings``. Floats are written with
17 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import asdict

from .bounds import DEFAULT_SLACK, verify_all
from .hypergraph import HypergraphError, gen_complete, gen_fano, gen_random, read_khg, serialize_khg
from .solver import GridTooLarge, SolverConfig, alpha_oracle, analytic_connectivity, grid_oracle

EXIT_OK, EXIT_INPUT, EXIT_CONFIG, EXIT_NOT_CONVERGED, EXIT_BOUND_FAILED = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ output


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = "%.17g" % x
    if not any(c in s for c in ".eEn"):
        s += ".0"
    return s


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with every float written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "tolist"):
        return dumps(obj.tolist(), indent, _level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _write_atomic(text: str, path) -> None:
    """Write via a temporary file in the target directory, so failures leave nothing behind."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, output) -> None:
    if output:
        _write_atomic(text, output)
    else:
        sys.stdout.write(text)


def _config_echo(cfg: SolverConfig) -> dict:
    return asdict(cfg)


def _alpha_record(res) -> dict:
    return {
        "alpha": float(res.alpha),
        "argmin_j": res.argmin_j,
        "per_j": [
            {
                "j": o.excluded_j,
                "value": float(o.value),
                "x": [float(v) for v in o.minimizer_x],
                "kkt_residual": float(o.kkt_residual),
                "iterations": int(o.iterations),
                "converged": bool(o.converged),
            }
            for o in res.per_j
        ],
    }


def _bounds_record(rep) -> dict:
    d = rep.to_dict()
    d["all_passed"] = rep.all_passed
    return d


def _alpha_table(rec: dict) -> str:
    lines = [f"alpha     {rec['alpha']:.12g}", f"argmin_j  {rec['argmin_j']}", "",
             f"{'j':>4}  {'value':>20}  {'kkt':>10}  {'iters':>7}  converged"]
    for row in rec["per_j"]:
        lines.append(f"{row['j']:>4}  {row['value']:>20.14g}  {row['kkt_residual']:>10.2e}  "
                     f"{row['iterations']:>7}  {'yes' if row['converged'] else 'NO'}")
    return "\n".join(lines) + "\n"


def _bounds_table(rec: dict) -> str:
    lines = ["", f"{'check':<18}  {'bound':>14}  result  relation"]
    for c in rec["checks"]:
        bound = "-" if c["bound"] is None else f"{c['bound']:.10g}"
        result = {True: "pass", False: "FAIL", None: "n/a"}[c["passed"]]
        note = f"  ({c['note']})" if c["note"] else ""
        lines.append(f"{c['name']:<18}  {bound:>14}  {result:<6}  {c['relation']}{note}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ commands


def _solver_config(args) -> SolverConfig:
    try:
        return SolverConfig(tol=args.tol, max_iter=args.max_iter, restarts=args.restarts, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load(path):
    try:
        return read_khg(path)
    except (OSError, UnicodeDecodeError) as exc:
        raise HypergraphError(f"cannot read {path}: {exc}") from None


def cmd_compute(args) -> int:
    cfg = _solver_config(args)
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    t0 = time.perf_counter()
    H = _load(args.path)
    t1 = time.perf_counter()
    res = analytic_connectivity(H, cfg, jobs=args.jobs)
    t2 = time.perf_counter()
    rec = {"input": str(args.path), "config": _config_echo(cfg), **_alpha_record(res)}
    if args.timings:
        rec["timings"] = {"parse": t1 - t0, "solve": t2 - t1}
    text = dumps(rec) + "\n" if args.format == "json" else _alpha_table(rec)
    _emit(text, args.output)
    return EXIT_OK if res.converged else EXIT_NOT_CONVERGED


def cmd_verify(args) -> int:
    cfg = _solver_config(args)
    if not args.slack > 0:
        raise UsageError("--slack must be positive")
    t0 = time.perf_counter()
    H = _load(args.path)
    t1 = time.perf_counter()
    res = analytic_connectivity(H, cfg, jobs=args.jobs)
    t2 = time.perf_counter()
    rep = verify_all(H, res.alpha, args.slack)
    t3 = time.perf_counter()
    rec = {"input": str(args.path), "config": _config_echo(cfg), **_alpha_record(res),
           "bounds": _bounds_record(rep)}
    if args.timings:
        rec["timings"] = {"parse": t1 - t0, "solve": t2 - t1, "bounds": t3 - t2}
    if args.format == "json":
        text = dumps(rec) + "\n"
    else:
        text = _alpha_table(rec) + _bounds_table(rec["bounds"])
    _emit(text, args.output)
    return EXIT_OK if rep.all_passed else EXIT_BOUND_FAILED


def cmd_gen(args) -> int:
    try:
        if args.family == "complete":
            H = gen_complete(args.n, args.k)
        elif args.family == "fano":
            H = gen_fano()
        else:
            H = gen_random(args.n, args.k, args.m, seed=args.seed, require_connected=args.connected)
    except HypergraphError as exc:
        raise UsageError(str(exc)) from None
    _emit(serialize_khg(H), args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.grid < 1:
        raise UsageError("--grid must be >= 1")
    H = _load(args.path)
    try:
        if args.per_j:
            per_j = [grid_oracle(H, j, args.grid) for j in range(1, H.n + 1)]
            value = min(per_j)
        else:
            per_j = None
            value = alpha_oracle(H, args.grid)
    except GridTooLarge as exc:
        raise UsageError(str(exc)) from None
    rec = {"input": str(args.path), "grid": args.grid, "oracle": value}
    if per_j is not None:
        rec["per_j"] = [{"j": j, "value": v} for j, v in enumerate(per_j, start=1)]
    if args.format == "json":
        text = dumps(rec) + "\n"
    else:
        text = f"oracle    {value:.17g}  (grid M={args.grid})\n"
        if per_j is not None:
            text += "".join(f"{j:>4}  {v:.17g}\n" for j, v in enumerate(per_j, start=1))
    _emit(text, args.output)
    return EXIT_OK


# ------------------------------------------------------------------ parser


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=50_000)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="concurrent subproblems; never changes results")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("-o", "--output", help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperconn", description="Analytic connectivity of k-uniform hypergraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute alpha(H) for a .khg file")
    p.add_argument("path")
    _add_solver_flags(p)
    _add_output_flags(p)
    p.add_argument("--timings", action="store_true", help="include wall times (output no longer reproducible)")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="compute alpha(H) and check every bound")
    p.add_argument("path")
    p.add_argument("--slack", type=float, default=DEFAULT_SLACK)
    _add_solver_flags(p)
    _add_output_flags(p)
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a generated hypergraph in .khg format")
    fam = p.add_subparsers(dest="family", required=True)
    q = fam.add_parser("complete")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("-o", "--output")
    q = fam.add_parser("fano")
    q.add_argument("-o", "--output")
    q = fam.add_parser("random")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--connected", action="store_true")
    q.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force grid minimum of the objective")
    p.add_argument("path")
    p.add_argument("--grid", type=int, required=True, metavar="M")
    p.add_argument("--per-j", action="store_true")
    _add_output_flags(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except HypergraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
