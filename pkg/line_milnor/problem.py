import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal, Self

import orjson
from latch_data_validation.data_validation import DataValidationError, validate

from .algebra.derivation import Derivation
from .algebra.order import Weights
from .algebra.parse import parse_poly
from .algebra.poly import Ring
from .derlog import build_derlog_hypersurface, load_derlog, split_d1
from .engine.ops import PreconditionViolation
from .errors import BadInputError
from .invariants import Limits, Problem
from .space import make_space_pair

# >>> Error classes


class ProblemSchemaError(BadInputError):
    def __init__(self: Self, e: DataValidationError | str) -> None:
        super().__init__(e if isinstance(e, str) else e.json())


# >>> Schema


@dataclass(frozen=True)
class ProblemOptions:
    n_max: int | None = None
    iteration_budget: int | None = None
    k_min: int | None = None
    k_max: int | None = None
    skip_isolated_check: bool = False


@dataclass(frozen=True)
class ProblemFile:
    """JSON problem description.

    `variables[0]` is the coordinate along the line; polynomials are strings
    in the `parse_poly` grammar; each derivation lists one component per
    variable.
    """

    variables: list[str]
    equations: list[str]
    f: str
    weights: list[int] | None = None
    derlog: list[list[str]] | None = None
    options: ProblemOptions | None = None


def parse_problem_file(data: bytes | str) -> ProblemFile:
    try:
        raw: Any = orjson.loads(data)
    except orjson.JSONDecodeError as e:
        raise ProblemSchemaError(f"problem file is not valid JSON: {e}") from e

    try:
        return validate(raw, ProblemFile)
    except DataValidationError as e:
        raise ProblemSchemaError(e) from e


def load_problem_file(path: Path) -> ProblemFile:
    try:
        data = path.read_bytes()
    except OSError as e:
        raise ProblemSchemaError(f"cannot read {path}: {e.strerror}") from e
    return parse_problem_file(data)


def emit_problem_file(pf: ProblemFile) -> bytes:
    return orjson.dumps(pf, option=orjson.OPT_INDENT_2)


# >>> Assembly


def limits_for(
    pf: ProblemFile, *, n_max: int | None = None, budget: int | None = None
) -> Limits:
    """Command-line values win over the file's options, which win over the config."""
    opts = pf.options or ProblemOptions()
    return Limits.from_config(
        iteration_budget=budget if budget is not None else opts.iteration_budget,
        n_max=n_max if n_max is not None else opts.n_max,
    )


def build_problem(
    pf: ProblemFile, *, n_max: int | None = None, budget: int | None = None
) -> Problem:
    if len(pf.variables) < 2:
        raise ProblemSchemaError("need at least two variables")
    try:
        ring = Ring(tuple(pf.variables))
    except ValueError as e:
        raise ProblemSchemaError(str(e)) from e

    weights: Weights | None = None
    if pf.weights is not None:
        if len(pf.weights) != ring.nvars or any(w < 1 for w in pf.weights):
            raise ProblemSchemaError(
                f"weights must be {ring.nvars} positive integers, got {pf.weights!r}"
            )
        weights = Weights(tuple(pf.weights))

    hs = [parse_poly(e, ring) for e in pf.equations]
    f = parse_poly(pf.f, ring)

    opts = pf.options or ProblemOptions()
    limits = limits_for(pf, n_max=n_max, budget=budget)

    if opts.skip_isolated_check:
        print(
            "warning: isolated-singularity check skipped", file=sys.stderr, flush=True
        )
    X = make_space_pair(
        ring,
        hs,
        weights,
        check_isolated=not opts.skip_isolated_check,
        budget=limits.iteration_budget,
    )

    if pf.derlog is None:
        if X.p > 1:
            raise PreconditionViolation(
                "logarithmic vector fields must be supplied for complete intersections"
            )
        basis = build_derlog_hypersurface(X, budget=limits.iteration_budget)
    else:
        gens: list[Derivation] = []
        for comps in pf.derlog:
            if len(comps) != ring.nvars:
                raise ProblemSchemaError(
                    f"derivation {comps!r} needs {ring.nvars} components"
                )
            gens.append(Derivation(tuple(parse_poly(c, ring) for c in comps)))
        basis = load_derlog(X, gens, budget=limits.iteration_budget)

    if X.p > 1:
        print(
            "warning: isolated singularity of the complete intersection is assumed,"
            " not checked",
            file=sys.stderr,
            flush=True,
        )

    return Problem(X, f, split_d1(basis, X), limits)


# >>> The X_{l,s} family

ExampleFunction = Literal["g", "f"]

example_functions: dict[ExampleFunction, str] = {
    "g": "y^2 - y*z + 1/2*z^2",
    "f": "y + 1/2*z^2",
}


def example_problem(l: int, s: int, function: ExampleFunction) -> ProblemFile:
    """`h = x^l y + x^s z^2 + yz` with weights `(1, s + l, l)`."""
    if l < 1 or s < 0:
        raise PreconditionViolation(f"need l >= 1 and s >= 0, got l={l}, s={s}")

    return ProblemFile(
        variables=["x", "y", "z"],
        weights=[1, s + l, l],
        equations=[f"x^{l}*y + x^{s}*z^2 + y*z"],
        f=example_functions[function],
    )
