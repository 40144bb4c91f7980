from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Self

from latch_o11y.o11y import trace_function
from opentelemetry.trace import get_tracer

from .algebra.order import LocalWeighted, Weights, is_weighted_homogeneous, weighted_degrees
from .algebra.poly import Polynomial, Ring
from .algebra.weights import infer_weights
from .engine.ideal import INFINITE, Dim, Ideal, vdim
from .engine.ops import PreconditionViolation, in_coordinate_ideal
from .errors import PreconditionError

tracer = get_tracer(__name__)

# >>> Error classes


class NotWeightedHomogeneous(PreconditionError):
    def __init__(self: Self, h: Polynomial, weights: Weights) -> None:
        super().__init__(f"{h} is not weighted homogeneous for weights {list(weights.w)}")
        self.h = h
        self.weights = weights


class NotIsolated(PreconditionError):
    def __init__(self: Self, h: Polynomial) -> None:
        super().__init__(f"{h} does not define an isolated singularity")
        self.h = h


# >>> Space pairs


@dataclass(frozen=True)
class SpacePair:
    """Space `X = V(hs)` containing the line `Σ`, the axis of variable 0.

    The ideal of `Σ` is generated by the remaining variables.
    """

    ring: Ring
    weights: Weights
    hs: tuple[Polynomial, ...]

    _cache: dict[str, Any] = field(
        default_factory=dict, init=False, compare=False, repr=False
    )

    @property
    def vars(self: Self) -> tuple[str, ...]:
        return self.ring.names

    @property
    def p(self: Self) -> int:
        return len(self.hs)

    @property
    def dim_X(self: Self) -> int:
        return self.ring.nvars - self.p

    @cached_property
    def order(self: Self) -> LocalWeighted:
        return LocalWeighted(self.weights)

    @property
    def line_indices(self: Self) -> list[int]:
        """Indices of the variables generating the ideal of the line."""
        return list(range(1, self.ring.nvars))

    @cached_property
    def sigma(self: Self) -> Ideal:
        return Ideal.coordinate(self.ring, self.order, self.line_indices)

    @cached_property
    def h_ideal(self: Self) -> Ideal:
        return Ideal.of(self.ring, self.order, self.hs)

    @property
    def x(self: Self) -> Polynomial:
        return self.ring.var(0)

    def ideal(self: Self, gens: Sequence[Polynomial]) -> Ideal:
        return Ideal.of(self.ring, self.order, gens)

    def degree(self: Self, i: int) -> int:
        (d,) = weighted_degrees(self.hs[i], self.weights)
        return d

    def in_sigma(self: Self, f: Polynomial) -> bool:
        return in_coordinate_ideal(f, self.line_indices)

    @trace_function(tracer)
    def milnor_number(self: Self, *, budget: int | None = None) -> Dim:
        """Milnor number of the hypersurface `h` (one equation only)."""
        if self.p != 1:
            raise PreconditionViolation("the Milnor number needs a single equation")

        res = self._cache.get("milnor_number")
        if res is not None:
            return res

        (h,) = self.hs
        gens = [h, *(h.diff(i) for i in range(self.ring.nvars))]
        res = vdim(self.ideal(gens), budget=budget)
        return self._cache.setdefault("milnor_number", res)


def make_space_pair(
    ring: Ring,
    hs: Sequence[Polynomial],
    weights: Weights | None = None,
    *,
    check_isolated: bool = True,
    budget: int | None = None,
) -> SpacePair:
    if not 1 <= len(hs) < ring.nvars:
        raise PreconditionViolation(
            f"need between 1 and {ring.nvars - 1} equations, got {len(hs)}"
        )
    for h in hs:
        if h.is_zero():
            raise PreconditionViolation("equations must be nonzero")

    if weights is None:
        weights = infer_weights(hs)
    if len(weights) != ring.nvars:
        raise PreconditionViolation(
            f"{len(weights)} weights given for {ring.nvars} variables"
        )

    X = SpacePair(ring, weights, tuple(hs))

    for h in hs:
        if not is_weighted_homogeneous(h, weights):
            raise NotWeightedHomogeneous(h, weights)
        if not X.in_sigma(h):
            raise PreconditionViolation(
                f"{h} does not vanish on the line (the {ring.names[0]}-axis)"
            )

    if check_isolated and X.p == 1 and X.milnor_number(budget=budget) is INFINITE:
        raise NotIsolated(hs[0])

    return X
