from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Any, Literal, Self, TypeAlias

from latch_o11y.o11y import trace_function
from opentelemetry.trace import get_current_span, get_tracer

from ..algebra.order import LocalWeighted, MonomialOrder
from ..algebra.poly import Monomial, Polynomial, Ring, monomial_divides
from .mora import StdBasis, compute_std_basis, mora_nf

tracer = get_tracer(__name__)


class Infinite(Enum):
    INFINITE = "infinite"

    def __str__(self: Self) -> str:
        return "infinite"


INFINITE = Infinite.INFINITE

Dim: TypeAlias = int | Literal[Infinite.INFINITE]


@dataclass(frozen=True)
class Ideal:
    """Ideal of the localization of `ring` at `order`.

    Zero generators are dropped. The standard basis is computed at most once
    per value and cached.
    """

    ring: Ring
    generators: tuple[Polynomial, ...]
    order: MonomialOrder

    _cache: dict[str, Any] = field(
        default_factory=dict, init=False, compare=False, repr=False
    )

    def __post_init__(self: Self) -> None:
        if self.order.nvars != self.ring.nvars:
            raise ValueError("order and ring have different numbers of variables")
        for g in self.generators:
            if g.ring != self.ring:
                raise ValueError(
                    f"generator {g} does not live in {self.ring.names!r}"
                )

        object.__setattr__(
            self, "generators", tuple(g for g in self.generators if not g.is_zero())
        )

    @classmethod
    def of(
        cls: type[Self], ring: Ring, order: MonomialOrder, gens: Iterable[Polynomial]
    ) -> Self:
        return cls(ring, tuple(gens), order)

    @classmethod
    def coordinate(
        cls: type[Self], ring: Ring, order: MonomialOrder, indices: Iterable[int]
    ) -> Self:
        return cls(ring, tuple(ring.var(i) for i in indices), order)

    @classmethod
    def maximal(cls: type[Self], ring: Ring, order: MonomialOrder) -> Self:
        return cls.coordinate(ring, order, range(ring.nvars))

    def with_order(self: Self, order: MonomialOrder) -> "Ideal":
        return Ideal(self.ring, self.generators, order)

    def with_generators(self: Self, gens: Iterable[Polynomial]) -> "Ideal":
        return Ideal(self.ring, tuple(gens), self.order)

    def is_zero(self: Self) -> bool:
        return len(self.generators) == 0

    def __len__(self: Self) -> int:
        return len(self.generators)

    def __iter__(self: Self) -> Iterator[Polynomial]:
        return iter(self.generators)


def std_basis(I: Ideal, *, budget: int | None = None) -> StdBasis:
    res = I._cache.get("std_basis")
    if res is not None:
        return res

    res = compute_std_basis(I.generators, I.order, budget=budget)
    return I._cache.setdefault("std_basis", res)


def is_member(f: Polynomial, I: Ideal, *, budget: int | None = None) -> bool:
    if f.is_zero():
        return True
    if I.is_zero():
        return False

    G = std_basis(I, budget=budget)
    return mora_nf(f, G.elements, I.order, budget=budget).is_zero()


def ideal_equal(I: Ideal, J: Ideal, *, budget: int | None = None) -> bool:
    if I.ring != J.ring or I.order != J.order:
        raise ValueError("ideals live in different rings or orders")

    return all(is_member(f, J, budget=budget) for f in I.generators) and all(
        is_member(f, I, budget=budget) for f in J.generators
    )


def is_subset(I: Ideal, J: Ideal, *, budget: int | None = None) -> bool:
    return all(is_member(f, J, budget=budget) for f in I.generators)


# >>> Standard monomials


def _pure_power_bounds(lms: Sequence[Monomial], n: int) -> list[int] | None:
    bounds: list[int] = []
    for i in range(n):
        best: int | None = None
        for m in lms:
            if all(e == 0 for j, e in enumerate(m) if j != i):
                if best is None or m[i] < best:
                    best = m[i]
        if best is None:
            return None
        bounds.append(best)
    return bounds


def standard_monomials(I: Ideal, *, budget: int | None = None) -> list[Monomial] | None:
    """Monomials outside the leading ideal; None when there are infinitely many."""
    if not isinstance(I.order, LocalWeighted):
        raise ValueError("standard monomials are only counted for local orders")

    n = I.ring.nvars
    if I.is_zero():
        return None if n > 0 else [()]

    lms = std_basis(I, budget=budget).minimal_leading_monomials()
    bounds = _pure_power_bounds(lms, n)
    if bounds is None:
        return None

    return [
        m
        for m in product(*(range(b) for b in bounds))
        if not any(monomial_divides(lm, m) for lm in lms)
    ]


@trace_function(tracer)
def vdim(I: Ideal, *, budget: int | None = None) -> Dim:
    """`dim O/I` for the local ring O, by counting standard monomials."""
    monos = standard_monomials(I, budget=budget)
    if monos is None:
        get_current_span().set_attribute("vdim", "infinite")
        return INFINITE

    get_current_span().set_attribute("vdim", len(monos))
    return len(monos)
