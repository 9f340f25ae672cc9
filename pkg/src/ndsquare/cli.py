"""Command-line interface.

Subcommands
-----------
sweep            negative-count vs bound comparison over a b grid (CSV/JSON)
trajectories     full difference spectra over a b grid (CSV/JSON)
crossing         crossing experiment at a Neumann eigenvalue level
bound            print the lattice bound for a coefficient window
assemble-dump    write an assembled matrix in the plain-text dump format
truncation-check per-operator and difference truncation-error estimates

Exit codes: 0 success, 1 invalid flags (usage), 2 precondition or
resonance errors (one-line diagnostic on stderr).  Output files are
byte-identical for identical configurations; reals in CSV carry 17
significant digits and round-trip exactly.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Sequence

from . import experiments, linalg, nd_matrix
from .spectrum import (
    DEFAULT_GUARD,
    ProblemParams,
    negative_eigenvalue_bound,
)

SWEEP_CSV_HEADER = (
    "b,measured_negative,theoretical_bound,"
    "min_eigenvalue,max_eigenvalue,skipped"
)
TRAJECTORIES_CSV_HEADER = "b,index,eigenvalue"


class _Parser(argparse.ArgumentParser):
    """argparse parser using exit code 1 for usage errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _add_common(parser: argparse.ArgumentParser, *, tol: bool = True) -> None:
    parser.add_argument("--k", type=float, default=1.0, help="wavenumber (default 1)")
    parser.add_argument(
        "--size", type=int, default=400,
        help="matrix size 4J; must be divisible by 4 (default 400)",
    )
    if tol:
        parser.add_argument(
            "--tol", type=float, default=linalg.DEFAULT_DELTA,
            help="negative-eigenvalue threshold delta (default 1e-5)",
        )
    parser.add_argument(
        "--guard", type=float, default=DEFAULT_GUARD,
        help="resonance guard tolerance (default 1e-9)",
    )
    parser.add_argument("--out", type=str, default=None, help="output path (default stdout)")


def _add_b_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--b", type=float, action="append", default=None,
                        help="single b value (repeatable)")
    parser.add_argument("--b-min", type=float, default=None)
    parser.add_argument("--b-max", type=float, default=None)
    parser.add_argument("--b-step", type=float, default=None)


def build_parser() -> _Parser:
    parser = _Parser(prog="ndsquare", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("sweep", help="negative counts vs lattice bound over a b grid")
    p.add_argument("--a", type=float, required=True)
    _add_b_grid(p)
    _add_common(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("trajectories", help="difference spectra over a b grid")
    p.add_argument("--a", type=float, required=True)
    _add_b_grid(p)
    _add_common(p, tol=False)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("crossing", help="crossing experiment at level pi^2*n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, default=0.1)
    _add_common(p)
    p.add_argument("--format", choices=("csv", "json"), default="json")

    p = sub.add_parser("bound", help="print the lattice bound for (a, b)")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--guard", type=float, default=DEFAULT_GUARD)

    p = sub.add_parser("assemble-dump", help="dump an assembled matrix")
    p.add_argument("--a", type=float, required=True)
    _add_common(p, tol=False)
    p.add_argument(
        "--series-cutoff", type=int, default=None,
        help="assemble via the series oracle with this cutoff instead of "
             "the closed forms",
    )

    p = sub.add_parser(
        "truncation-check",
        help="per-operator (and, with --b, operator-difference) "
             "truncation-error estimates",
    )
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, default=None)
    _add_common(p, tol=False)
    p.add_argument("--format", choices=("text", "json"), default="text")

    return parser


def _modes_per_side(parser: _Parser, size: int) -> int:
    if size < 4 or size % 4 != 0:
        parser.error(f"--size must be a positive multiple of 4, got {size}")
    return size // 4


def _b_grid(parser: _Parser, args: argparse.Namespace) -> list[float]:
    explicit = args.b is not None
    ranged = any(v is not None for v in (args.b_min, args.b_max, args.b_step))
    if explicit == ranged:
        parser.error("provide either --b or the --b-min/--b-max/--b-step range")
    if explicit:
        return list(args.b)
    if args.b_min is None or args.b_max is None or args.b_step is None:
        parser.error("--b-min, --b-max and --b-step must be given together")
    if args.b_step <= 0:
        parser.error(f"--b-step must be positive, got {args.b_step}")
    if args.b_max < args.b_min:
        parser.error("--b-max must be >= --b-min")
    count = int((args.b_max - args.b_min) / args.b_step + 1e-9) + 1
    return [args.b_min + i * args.b_step for i in range(count)]


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _run_sweep(parser: _Parser, args: argparse.Namespace) -> int:
    j_modes = _modes_per_side(parser, args.size)
    if args.tol <= 0:
        parser.error(f"--tol must be positive, got {args.tol}")
    b_values = _b_grid(parser, args)
    reports = experiments.sweep(
        args.a, b_values, k=args.k, modes_per_side=j_modes,
        delta=args.tol, guard=args.guard,
    )
    if args.format == "json":
        _emit(_json_dumps([dataclasses.asdict(r) for r in reports]), args.out)
        return 0
    lines = [SWEEP_CSV_HEADER]
    for r in reports:
        if r.skipped:
            lines.append(f"{_fmt(r.b)},,,,,1")
        else:
            lines.append(
                f"{_fmt(r.b)},{r.measured_negative},{r.theoretical_bound},"
                f"{_fmt(r.min_eigenvalue)},{_fmt(r.max_eigenvalue)},0"
            )
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _run_trajectories(parser: _Parser, args: argparse.Namespace) -> int:
    j_modes = _modes_per_side(parser, args.size)
    b_values = _b_grid(parser, args)
    points = experiments.trajectories(
        args.a, b_values, k=args.k, modes_per_side=j_modes, guard=args.guard,
    )
    if args.format == "json":
        _emit(_json_dumps([dataclasses.asdict(p) for p in points]), args.out)
        return 0
    lines = [TRAJECTORIES_CSV_HEADER]
    for point in points:
        if point.skipped:
            continue
        for idx, eig in enumerate(point.eigenvalues):
            lines.append(f"{_fmt(point.b)},{idx},{_fmt(eig)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _run_crossing(parser: _Parser, args: argparse.Namespace) -> int:
    j_modes = _modes_per_side(parser, args.size)
    if args.tol <= 0:
        parser.error(f"--tol must be positive, got {args.tol}")
    report = experiments.verify_crossing(
        args.n, eps=args.eps, k=args.k, modes_per_side=j_modes,
        delta=args.tol, guard=args.guard,
    )
    attempts = " ".join(
        f"eps={at.eps!r}:measured={at.measured}" for at in report.attempts
    )
    sys.stdout.write(
        f"n={report.n} expected={report.expected} measured={report.measured} "
        f"agreed={int(report.agreed)} attempts=[{attempts}]\n"
    )
    if args.out is not None:
        payload = dataclasses.asdict(report)
        payload["measured"] = report.measured
        payload["agreed"] = report.agreed
        _emit(_json_dumps(payload), args.out)
    return 0


def _run_bound(parser: _Parser, args: argparse.Namespace) -> int:
    value = negative_eigenvalue_bound(args.a, args.b, args.k, args.guard)
    sys.stdout.write(f"{value}\n")
    return 0


def _run_assemble_dump(parser: _Parser, args: argparse.Namespace) -> int:
    j_modes = _modes_per_side(parser, args.size)
    params = ProblemParams(
        a=args.a, k=args.k, modes_per_side=j_modes, guard=args.guard
    )
    if args.series_cutoff is not None:
        nd = nd_matrix.assemble_series_oracle(params, args.series_cutoff)
    else:
        nd = nd_matrix.assemble(params)
    _emit(nd_matrix.dumps_matrix(nd), args.out)
    return 0


def _run_truncation_check(parser: _Parser, args: argparse.Namespace) -> int:
    j_modes = _modes_per_side(parser, args.size)
    if j_modes % 2 != 0:
        parser.error(
            f"--size must correspond to an even mode count for halving, "
            f"got size={args.size} (J={j_modes})"
        )
    per_a = linalg.truncation_error(
        ProblemParams(a=args.a, k=args.k, modes_per_side=j_modes, guard=args.guard)
    )
    per_b = None
    diff = None
    if args.b is not None:
        per_b = linalg.truncation_error(
            ProblemParams(a=args.b, k=args.k, modes_per_side=j_modes, guard=args.guard)
        )
        diff = linalg.difference_truncation_error(
            args.a, args.b, k=args.k, modes_per_side=j_modes, guard=args.guard
        )
    if args.format == "json":
        payload = {
            "a": args.a, "b": args.b, "k": args.k, "modes_per_side": j_modes,
            "per_operator_a": per_a, "per_operator_b": per_b,
            "difference": diff,
        }
        _emit(_json_dumps(payload), args.out)
        return 0
    lines = [f"per_operator_truncation_error a={_fmt(args.a)}: {_fmt(per_a)}"]
    if per_b is not None:
        lines.append(
            f"per_operator_truncation_error b={_fmt(args.b)}: {_fmt(per_b)}"
        )
        lines.append(f"difference_truncation_error: {_fmt(diff)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


_COMMANDS = {
    "sweep": _run_sweep,
    "trajectories": _run_trajectories,
    "crossing": _run_crossing,
    "bound": _run_bound,
    "assemble-dump": _run_assemble_dump,
    "truncation-check": _run_truncation_check,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](parser, args)
    except ValueError as exc:  # includes ResonanceError
        sys.stderr.write(f"ndsquare {args.command}: {exc}\n")
        return 2


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
