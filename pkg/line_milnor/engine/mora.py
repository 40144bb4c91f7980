"""Mora normal form and standard bases for local and mixed orders.

Reducers are chosen by minimal ecart (`deg(p) - deg(LM(p))`), ties by
position. Whenever the chosen reducer has a larger ecart than the current
remainder, the remainder itself joins the reducer set for the rest of the
reduction: this is what makes the reduction terminate for orders that are
not well-orders.

Under a local weighted order, once the leading monomials contain a pure
power of every variable, every monomial of weighted degree at least
`corner_degree` lies in the ideal. Uncertified reductions drop those terms.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod
from typing import Self

from latch_o11y.o11y import trace_function
from opentelemetry.trace import get_current_span, get_tracer

from ..algebra.order import (
    LocalWeighted,
    MonomialOrder,
    leading_monomial,
    leading_term,
    weighted_degree,
)
from ..algebra.poly import (
    Monomial,
    Polynomial,
    monomial_coprime,
    monomial_divides,
    monomial_lcm,
    monomial_quotient,
)
from ..config import config
from ..errors import StabilizationError

tracer = get_tracer(__name__)

# >>> Error classes


class IterationBudgetExceeded(StabilizationError):
    def __init__(self: Self, budget: int) -> None:
        super().__init__(
            f"standard basis computation exceeded its budget of {budget} term"
            " operations"
        )
        self.budget = budget


# >>> Bookkeeping


@dataclass
class StepCounter:
    """Counts term operations: a reduction step costs the length of its reducer."""

    budget: int
    steps: int = 0

    @classmethod
    def create(cls: type[Self], budget: int | None) -> Self:
        return cls(config.iteration_budget if budget is None else budget)

    def spend(self: Self, terms: int = 1) -> None:
        self.steps += terms
        if self.steps > self.budget:
            raise IterationBudgetExceeded(self.budget)


@dataclass(frozen=True)
class Certificate:
    """Witness of `unit * f = sum(coefficients[i] * G[i]) + remainder`."""

    unit: Polynomial
    coefficients: tuple[Polynomial, ...]

    def verify(
        self: Self,
        f: Polynomial,
        G: Sequence[Polynomial],
        remainder: Polynomial,
        ord: MonomialOrder,
    ) -> bool:
        if self.unit.is_zero():
            return False
        if leading_monomial(self.unit, ord) != f.ring.one_monomial:
            return False

        rhs = remainder
        for a, g in zip(self.coefficients, G, strict=True):
            rhs = rhs + a * g
        return self.unit * f == rhs


@dataclass
class _Reducer:
    poly: Polynomial
    lm: Monomial
    lc: Fraction
    ecart: int
    unit: Polynomial | None = None
    coefficients: list[Polynomial] | None = None

    @classmethod
    def of(
        cls: type[Self],
        p: Polynomial,
        ord: MonomialOrder,
        unit: Polynomial | None = None,
        coefficients: list[Polynomial] | None = None,
    ) -> Self:
        lm, lc = leading_term(p, ord)
        return cls(p, lm, lc, p.degree() - sum(lm), unit, coefficients)


_CORNER_BOX_LIMIT = 20_000


def corner_degree(lms: Sequence[Monomial], ord: MonomialOrder) -> int | None:
    """Weighted degree from which on every monomial lies in the leading ideal.

    This is one more than the weighted degree of the highest corner. It is
    only defined for local weighted orders, and only once `lms` contains a
    pure power of every variable; otherwise the result is `None`.
    """
    if not isinstance(ord, LocalWeighted):
        return None

    powers: list[int | None] = [None] * ord.nvars
    for lm in lms:
        support = [i for i, e in enumerate(lm) if e > 0]
        if not support:
            return 0
        if len(support) == 1:
            i = support[0]
            cur = powers[i]
            powers[i] = lm[i] if cur is None else min(cur, lm[i])

    bounds = [a for a in powers if a is not None]
    if len(bounds) != ord.nvars:
        return None

    # past this box size the pure powers alone give the bound
    if prod(bounds) > _CORNER_BOX_LIMIT:
        return 1 + sum(w * (a - 1) for w, a in zip(ord.weights.w, bounds, strict=True))

    corner = -1
    for m in product(*(range(a) for a in bounds)):
        if any(monomial_divides(lm, m) for lm in lms):
            continue
        corner = max(corner, weighted_degree(m, ord.weights))
    return corner + 1


def _reduce(
    h: Polynomial,
    reducers: list[_Reducer],
    ord: MonomialOrder,
    counter: StepCounter,
    *,
    unit: Polynomial | None = None,
    coefficients: list[Polynomial] | None = None,
    degree_bound: int | None = None,
) -> tuple[Polynomial, Polynomial | None, list[Polynomial] | None]:
    track = unit is not None and coefficients is not None
    # truncation changes h by an element of the ideal, which a certificate
    # cannot account for
    assert not (track and degree_bound is not None)

    T = list(reducers)
    weights = ord.weights.w if isinstance(ord, LocalWeighted) else None

    if degree_bound is not None:
        h = h.truncate(degree_bound, weights)

    while h:
        lm, lc = leading_term(h, ord)

        best: _Reducer | None = None
        for r in T:
            if not monomial_divides(r.lm, lm):
                continue
            if best is None or r.ecart < best.ecart:
                best = r
        if best is None:
            break

        counter.spend(len(best.poly))

        e = h.degree() - sum(lm)
        if best.ecart > e:
            T.append(
                _Reducer(
                    h,
                    lm,
                    lc,
                    e,
                    unit,
                    None if coefficients is None else list(coefficients),
                )
            )

        m = monomial_quotient(lm, best.lm)
        c = lc / best.lc
        h = h - best.poly.mul_term(m, c)
        if degree_bound is not None:
            h = h.truncate(degree_bound, weights)

        if track:
            assert unit is not None and coefficients is not None
            assert best.unit is not None and best.coefficients is not None
            unit = unit - best.unit.mul_term(m, c)
            coefficients = [
                a - b.mul_term(m, c)
                for a, b in zip(coefficients, best.coefficients, strict=True)
            ]

    return h, unit, coefficients


def mora_nf(
    f: Polynomial,
    G: Sequence[Polynomial],
    ord: MonomialOrder,
    *,
    budget: int | None = None,
) -> Polynomial:
    """Weak normal form of `f` with respect to `G`.

    No leading monomial of `G` divides the leading monomial of the result.
    Terms at or above `corner_degree` of the leading monomials of `G` are
    dropped, so the result agrees with `f` only modulo the ideal.
    """
    counter = StepCounter.create(budget)
    reducers = [_Reducer.of(g, ord) for g in G if not g.is_zero()]
    bound = corner_degree([r.lm for r in reducers], ord)
    return _reduce(f, reducers, ord, counter, degree_bound=bound)[0]


@trace_function(tracer)
def mora_nf_certified(
    f: Polynomial,
    G: Sequence[Polynomial],
    ord: MonomialOrder,
    *,
    budget: int | None = None,
) -> tuple[Polynomial, Certificate]:
    """`mora_nf` together with the unit and the coefficients of the division."""
    ring = f.ring
    counter = StepCounter.create(budget)

    reducers: list[_Reducer] = []
    for i, g in enumerate(G):
        if g.is_zero():
            continue
        # g = 0 * f - (-e_i) . G
        coefficients = [
            ring.constant(-1) if j == i else ring.zero() for j in range(len(G))
        ]
        reducers.append(_Reducer.of(g, ord, ring.zero(), coefficients))

    r, unit, coefficients = _reduce(
        f,
        reducers,
        ord,
        counter,
        unit=ring.constant(1),
        coefficients=[ring.zero() for _ in G],
    )
    assert unit is not None and coefficients is not None

    get_current_span().set_attributes({"steps": counter.steps, "generators": len(G)})
    return r, Certificate(unit, tuple(coefficients))


# >>> Standard bases


@dataclass(frozen=True)
class StdBasis:
    elements: tuple[Polynomial, ...]
    order: MonomialOrder
    leading_monomials: tuple[Monomial, ...] = field(init=False)

    def __post_init__(self: Self) -> None:
        object.__setattr__(
            self,
            "leading_monomials",
            tuple(leading_monomial(g, self.order) for g in self.elements),
        )

    def minimal_leading_monomials(self: Self) -> tuple[Monomial, ...]:
        """Minimal generators of the leading ideal, in basis order."""
        res: list[Monomial] = []
        lms = list(dict.fromkeys(self.leading_monomials))
        for i, m in enumerate(lms):
            if any(monomial_divides(o, m) for j, o in enumerate(lms) if j != i and o != m):
                continue
            res.append(m)
        return tuple(res)

    def is_standard(self: Self, m: Monomial) -> bool:
        """Whether `m` lies outside the leading ideal."""
        return not any(monomial_divides(lm, m) for lm in self.leading_monomials)

    def reduce(self: Self, f: Polynomial, *, budget: int | None = None) -> Polynomial:
        return mora_nf(f, self.elements, self.order, budget=budget)


def s_polynomial(f: Polynomial, g: Polynomial, ord: MonomialOrder) -> Polynomial:
    lm_f, lc_f = leading_term(f, ord)
    lm_g, lc_g = leading_term(g, ord)
    lcm = monomial_lcm(lm_f, lm_g)
    return f.mul_term(monomial_quotient(lcm, lm_f), 1 / lc_f) - g.mul_term(
        monomial_quotient(lcm, lm_g), 1 / lc_g
    )


@dataclass(frozen=True)
class _Pair:
    i: int
    j: int
    lcm: Monomial


def _monic(p: Polynomial, ord: MonomialOrder) -> Polynomial:
    return p.scale(1 / leading_term(p, ord)[1])


@trace_function(tracer)
def compute_std_basis(
    gens: Sequence[Polynomial], ord: MonomialOrder, *, budget: int | None = None
) -> StdBasis:
    """Standard basis of the ideal generated by `gens` in the localization at `ord`.

    Pairs are processed lowest lcm degree first; among equal degrees the
    larger lcm in `ord` goes first. Pairs are discarded by Buchberger's chain
    criterion, and by the product criterion when one of the two elements has
    ecart 0. S-polynomials are truncated at the current `corner_degree`.
    """
    counter = StepCounter.create(budget)

    S: list[_Reducer] = []
    P: list[_Pair] = []
    bound: int | None = None

    def insert(h: Polynomial) -> None:
        nonlocal bound

        r = _Reducer.of(_monic(h, ord), ord)
        k = len(S)

        for pair in list(P):
            if (
                monomial_divides(r.lm, pair.lcm)
                and monomial_lcm(S[pair.i].lm, r.lm) != pair.lcm
                and monomial_lcm(S[pair.j].lm, r.lm) != pair.lcm
            ):
                P.remove(pair)

        for i, s in enumerate(S):
            if monomial_coprime(s.lm, r.lm) and (s.ecart == 0 or r.ecart == 0):
                continue
            P.append(_Pair(i, k, monomial_lcm(s.lm, r.lm)))

        S.append(r)
        bound = corner_degree([s.lm for s in S], ord)

    for g in gens:
        if g.is_zero():
            continue
        insert(g)

    while P:
        pair = max(P, key=lambda p: (-sum(p.lcm), ord.key(p.lcm), -p.j, -p.i))
        P.remove(pair)

        sp = s_polynomial(S[pair.i].poly, S[pair.j].poly, ord)
        h = _reduce(sp, S, ord, counter, degree_bound=bound)[0]
        if h:
            insert(h)

    get_current_span().set_attributes(
        {"generators": len(gens), "basis_size": len(S), "steps": counter.steps}
    )
    return StdBasis(tuple(r.poly for r in S), ord)
