"""Logarithmic vector fields of a weighted homogeneous space.

For a hypersurface `h` with an isolated singularity the module `D_X` is
generated by the Euler derivation and the Hamiltonian fields

    sigma_ij = (dh/dz_j) d/dz_i - (dh/dz_i) d/dz_j,   i < j.

If `xi(h) = a*h`, then `xi - (a/d) xi_E` annihilates `h`, so its components
form a syzygy of the partials of `h`. The partials are a regular sequence
(isolated singularity), hence the syzygy is Koszul, i.e. an O-combination of
the `sigma_ij`. The trivial fields `h d/dz_i` are such combinations too
(`d*h*d/dz_i = xi_E(h) d/dz_i = sum_j w_j z_j sigma_ij` up to sign), so they
are left out.

For complete intersections with several equations the generators are taken
from the caller and only verified.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Self

from latch_o11y.o11y import trace_function
from opentelemetry.trace import get_current_span, get_tracer

from .algebra.derivation import Derivation
from .algebra.order import LocalWeighted, is_weighted_homogeneous
from .algebra.poly import Polynomial
from .engine.ideal import INFINITE, Ideal, is_member
from .engine.ops import PreconditionViolation, ideal_sum
from .errors import PreconditionError
from .space import NotIsolated, NotWeightedHomogeneous, SpacePair

tracer = get_tracer(__name__)

# >>> Error classes


class TangencyFailure(PreconditionError):
    def __init__(self: Self, xi: Derivation, h: Polynomial) -> None:
        super().__init__(f"{xi} is not tangent to X: {xi(h)} is not in ({h})")
        self.xi = xi
        self.h = h


class AxisRestrictionNonvanishing(PreconditionError):
    def __init__(self: Self, xi: Derivation) -> None:
        super().__init__(
            f"the first component of {xi} does not vanish at the origin of the line;"
            " this contradicts the isolated-singularity hypothesis"
        )
        self.xi = xi


# >>> Bases


@dataclass(frozen=True)
class DerlogBasis:
    euler: Derivation
    others: tuple[Derivation, ...]

    def all(self: Self) -> tuple[Derivation, ...]:
        return (self.euler, *self.others)

    def __len__(self: Self) -> int:
        return 1 + len(self.others)


@dataclass(frozen=True)
class SplitDerlog:
    """`D_X = O*xi_E + D1`: every member of `d1` has its first component in the line ideal."""

    d0: Derivation
    d1: tuple[Derivation, ...]
    order: LocalWeighted

    def all(self: Self) -> tuple[Derivation, ...]:
        return (self.d0, *self.d1)


def _check_tangent(X: SpacePair, xi: Derivation, *, budget: int | None = None) -> None:
    H = X.h_ideal
    for h in X.hs:
        if not is_member(xi(h), H, budget=budget):
            raise TangencyFailure(xi, h)


@trace_function(tracer)
def build_derlog_hypersurface(
    X: SpacePair, *, budget: int | None = None
) -> DerlogBasis:
    if X.p != 1:
        raise PreconditionViolation(
            "generators are only constructed for hypersurfaces; supply them for"
            f" {X.p} equations"
        )

    (h,) = X.hs
    if not is_weighted_homogeneous(h, X.weights):
        raise NotWeightedHomogeneous(h, X.weights)
    if X.milnor_number(budget=budget) is INFINITE:
        raise NotIsolated(h)

    n = X.ring.nvars
    partials = [h.diff(i) for i in range(n)]
    zero = X.ring.zero()

    others: list[Derivation] = []
    for i in range(n):
        for j in range(i + 1, n):
            comps = [zero] * n
            comps[i] = partials[j]
            comps[j] = -partials[i]
            others.append(Derivation(tuple(comps)))

    res = DerlogBasis(Derivation.euler(X.ring, X.weights), tuple(others))
    for xi in res.all():
        _check_tangent(X, xi, budget=budget)

    get_current_span().set_attribute("generators", len(res))
    return res


@trace_function(tracer)
def load_derlog(
    X: SpacePair, gens: Sequence[Derivation], *, budget: int | None = None
) -> DerlogBasis:
    if len(gens) == 0:
        raise PreconditionViolation("no derivations given")

    euler = Derivation.euler(X.ring, X.weights)
    if gens[0] != euler:
        raise PreconditionViolation(
            f"the first derivation must be the Euler derivation {euler}, got {gens[0]}"
        )

    for xi in gens:
        if xi.ring != X.ring:
            raise PreconditionViolation(f"{xi} does not live in {X.ring.names!r}")
        _check_tangent(X, xi, budget=budget)

    return DerlogBasis(euler, tuple(gens[1:]))


def split_d1(basis: DerlogBasis, X: SpacePair) -> SplitDerlog:
    x = X.x
    w0 = X.weights[0]

    d1: list[Derivation] = []
    for xi in basis.others:
        c = xi.components[0].restrict_to_axis()
        if c.is_zero():
            d1.append(xi)
            continue

        if c.constant_term() != 0:
            raise AxisRestrictionNonvanishing(xi)

        c_over_x = c.exact_div(x)
        assert c_over_x is not None
        # xi - (1/w0) (c/x) xi_E
        xi1 = xi - basis.euler.times(c_over_x.scale(Fraction(1, w0)))

        assert X.in_sigma(xi1.components[0])
        d1.append(xi1)

    return SplitDerlog(basis.euler, tuple(d1), X.order)


def jacobian_ideal(split: SplitDerlog, f: Polynomial) -> tuple[Ideal, Ideal, Ideal]:
    """`(J0, J1, J_X)`: images of `f` under `D0`, `D1` and all of `D_X`."""
    J0 = Ideal.of(f.ring, split.order, [split.d0(f)])
    J1 = Ideal.of(f.ring, split.order, [xi(f) for xi in split.d1])
    return J0, J1, ideal_sum(J0, J1)
