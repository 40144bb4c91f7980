import argparse
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import NoReturn, Self

import orjson

from .derlog import jacobian_ideal
from .engine.ideal import Ideal
from .engine.ops import ideal_sum, truncated_dim
from .errors import BadInputError, ExitStatus, KernelError, MismatchError
from .invariants import (
    Problem,
    build_report,
    check_constancy,
    exact_sequence_check,
    f_k,
    lemma42_sweep,
    nu_ideal,
    q44_check,
    series_table,
    sweep_series,
)
from .oracle import jet_dim
from .problem import (
    ProblemFile,
    build_problem,
    emit_problem_file,
    example_problem,
    load_problem_file,
)
from .report import InvariantReport, SeriesRow, emit_report

# >>> Error classes


class UsageError(BadInputError):
    pass


class OracleMismatch(MismatchError):
    def __init__(self: Self, names: Sequence[str]) -> None:
        super().__init__(f"engine and oracle disagree on {', '.join(names)}")
        self.names = list(names)


# >>> Rendering


def _yes_no(b: bool) -> str:
    return "yes" if b else "no"


def _opt(x: int | None) -> str:
    return "n/a" if x is None else str(x)


def render_series(rows: Sequence[SeriesRow]) -> str:
    lines = [f"{'k':>4}  {'mu(f_k)':>8}  {'k+1+j+nu':>9}  consistent"]
    for r in rows:
        if not r.isolated:
            lines.append(f"{r.k:>4}  {'-':>8}  {r.predicted:>9}  not isolated at this k")
            continue
        lines.append(
            f"{r.k:>4}  {r.mu:>8}  {r.predicted:>9}  {_yes_no(r.consistent)}"
        )
    return "\n".join(lines)


def render_report(r: InvariantReport) -> str:
    lines = [
        f"f = {r.f} on {', '.join(r.variables)} (dim X = {r.dim_x})",
        f"primitive member: {_yes_no(r.primitive_member)}",
        f"constant transversal type: {_yes_no(r.constancy)}",
        f"j(f) = {r.jacobian_number}",
        f"nu = {r.nu}",
        f"chi(F) = {r.chi}",
        f"lambda = {_opt(r.torsion_number)}",
        f"delta_f = {_opt(r.delta)}",
        f"sigma = {r.sigma}, mult = {r.mult}",
        f"q44: {r.q44.describe()}",
    ]
    if r.x_milnor is not None:
        lines.append(f"mu(X) = {r.x_milnor}")
    lines.append(render_series(r.series))
    return "\n".join(lines)


# >>> Commands


def _load(args: argparse.Namespace) -> tuple[ProblemFile, Problem]:
    pf = load_problem_file(Path(args.file))
    return pf, build_problem(pf, n_max=args.n_max, budget=args.budget)


def cmd_invariants(args: argparse.Namespace) -> ExitStatus:
    _, P = _load(args)
    report = build_report(P)

    if args.json:
        sys.stdout.buffer.write(emit_report(report) + b"\n")
    else:
        print(render_report(report))
    return ExitStatus.ok


def cmd_series(args: argparse.Namespace) -> ExitStatus:
    pf, P = _load(args)
    opts = pf.options

    k_min = args.k_min
    if k_min is None:
        k_min = opts.k_min if opts is not None and opts.k_min is not None else 1
    k_max = args.k_max
    if k_max is None and opts is not None:
        k_max = opts.k_max

    rows = sweep_series(P, k_min) if k_max is None else series_table(P, k_min, k_max)

    if args.json:
        sys.stdout.buffer.write(orjson.dumps(rows, option=orjson.OPT_INDENT_2) + b"\n")
    else:
        print(render_series(rows))
    return ExitStatus.ok


def cmd_check(args: argparse.Namespace) -> ExitStatus:
    _, P = _load(args)

    match args.which:
        case "q44":
            print(q44_check(P).describe())
        case "constancy":
            if check_constancy(P):
                print("constant")
            else:
                print("not constant (the colon ideal has infinite codimension)")
        case "lemma42":
            count = P.limits.sweep_length
            k = lemma42_sweep(P, count)
            if k is None:
                print(f"no equality for {count} consecutive k up to k={P.limits.k_limit}")
            else:
                print(f"equality from k={k}, verified {count} consecutive k")
        case "exact-sequence":
            k = args.k
            if k is None:
                isolated = [r.k for r in sweep_series(P) if r.isolated]
                if len(isolated) == 0:
                    print(f"f_k is not isolated for any k up to {P.limits.k_limit}")
                    return ExitStatus.ok
                k = isolated[-1]
            print(f"k={k}: {'holds' if exact_sequence_check(P, k) else 'fails'}")
        case _:
            raise ValueError(f"unknown check {args.which!r}")

    return ExitStatus.ok


def _oracle_corpus(P: Problem, k: int) -> list[tuple[str, Ideal]]:
    X = P.space
    _, _, JX = jacobian_ideal(P.derlog, P.f)
    _, _, JX_k = jacobian_ideal(P.derlog, f_k(P, k))
    return [
        ("h + J_X(f)", ideal_sum(X.h_ideal, JX)),
        (f"h + J_X(f_{k})", ideal_sum(X.h_ideal, JX_k)),
        (f"g + J_X(f_{k})", ideal_sum(X.sigma, JX_k)),
        ("g + (J1 + h) : J0", nu_ideal(P)),
    ]


def cmd_oracle(args: argparse.Namespace) -> ExitStatus:
    _, P = _load(args)
    N = args.N
    if N < 1:
        raise BadInputError("--N must be positive")

    print(f"{'ideal':<24}  {'engine':>7}  {'oracle':>7}")
    mismatches: list[str] = []
    for name, I in _oracle_corpus(P, args.k):
        engine = truncated_dim(I, N, budget=P.budget)
        oracle = jet_dim(I, N)
        mark = "" if engine == oracle else "  MISMATCH"
        print(f"{name:<24}  {engine:>7}  {oracle:>7}{mark}")
        if engine != oracle:
            mismatches.append(name)

    if len(mismatches) > 0:
        raise OracleMismatch(mismatches)
    return ExitStatus.ok


def cmd_example(args: argparse.Namespace) -> ExitStatus:
    pf = example_problem(args.l, args.s, args.function)
    sys.stdout.buffer.write(emit_problem_file(pf) + b"\n")
    return ExitStatus.ok


# >>> Entrypoint


class _ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors with exit status 4 instead of 2."""

    def error(self: Self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="milnor-line",
        description=(
            "Euler characteristic of Milnor fibres of line singularities on"
            " weighted homogeneous spaces, with the invariants it is built from."
        ),
    )
    parser.add_argument(
        "--n-max", type=int, default=None, help="Last truncation order tried."
    )
    parser.add_argument(
        "--budget", type=int, default=None, help="Term operations per standard basis."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="Compute the full invariant report.")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_invariants)

    p = sub.add_parser("series", help="Tabulate mu(f_k) against k+1+j+nu.")
    p.add_argument("file")
    p.add_argument("--k-min", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_series)

    p = sub.add_parser("check", help="Check one identity.")
    p.add_argument("which", choices=["q44", "lemma42", "constancy", "exact-sequence"])
    p.add_argument("file")
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("oracle", help="Compare engine and jet-space dimensions.")
    p.add_argument("file")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=int, default=10, help="Series index used for f_k.")
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser("example", help="Print the problem file of X_{l,s}.")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--function", choices=["g", "f"], default="g")
    p.set_defaults(handler=cmd_example)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        status = args.handler(args)
    except KernelError as e:
        print(f"error: {e.data}", file=sys.stderr)
        return e.status.value

    return status.value
