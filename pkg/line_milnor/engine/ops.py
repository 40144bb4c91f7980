from collections.abc import Iterator
from math import comb
from typing import Self

from latch_o11y.o11y import trace_function
from opentelemetry.trace import get_current_span, get_tracer

from ..algebra.order import LocalWeighted, elimination_order, local_degree_order
from ..algebra.poly import Monomial, Polynomial, monomial_divides
from ..config import config
from ..errors import PreconditionError, StabilizationError
from .ideal import Ideal, std_basis
from .mora import compute_std_basis, mora_nf_certified

tracer = get_tracer(__name__)

# >>> Error classes


class ExactDivisionFailure(RuntimeError):
    def __init__(self: Self, p: Polynomial, f: Polynomial) -> None:
        super().__init__(f"{p} is not divisible by {f}")
        self.p = p
        self.f = f


class NoStabilization(StabilizationError):
    def __init__(self: Self, n_max: int) -> None:
        super().__init__(
            f"dimension not finite or N_max too small (no stabilization up to"
            f" N = {n_max})"
        )
        self.n_max = n_max


class PreconditionViolation(PreconditionError): ...


# >>> Sums and products


def _check_compatible(I: Ideal, J: Ideal) -> None:
    if I.ring != J.ring or I.order != J.order:
        raise ValueError("ideals live in different rings or orders")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check_compatible(I, J)
    return I.with_generators((*I.generators, *J.generators))


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _check_compatible(I, J)
    return I.with_generators(f * g for f in I.generators for g in J.generators)


# >>> Intersections and quotients


@trace_function(tracer)
def intersect(I: Ideal, J: Ideal, *, budget: int | None = None) -> Ideal:
    """`I ∩ J` via `(t*I + (1 - t)*J) ∩ O`, with `t` eliminated first."""
    _check_compatible(I, J)
    if not isinstance(I.order, LocalWeighted):
        raise ValueError("intersection needs a local weighted order")

    if I.is_zero() or J.is_zero():
        return I.with_generators(())

    name = "t"
    while name in I.ring.names:
        name = f"_{name}"
    ring_t = I.ring.extend(name)
    n = I.ring.nvars
    t = ring_t.var(n)

    gens = [t * g.extend(ring_t) for g in I.generators]
    gens.extend((1 - t) * g.extend(ring_t) for g in J.generators)

    G = compute_std_basis(gens, elimination_order(I.order), budget=budget)
    res = [g.contract(I.ring) for g in G.elements if g.degree_in([n]) == 0]

    get_current_span().set_attribute("generators", len(res))
    return I.with_generators(res)


def colon_poly(I: Ideal, f: Polynomial, *, budget: int | None = None) -> Ideal:
    """`I : (f)`, from the generators of `I ∩ (f)` divided by `f`.

    A generator `p` is only a multiple of `f` up to a unit. When polynomial
    division fails, the certificate `u*p = a*f` gives `a`, which generates the
    same ideal as `p/f`.
    """
    K = intersect(I, I.with_generators([f]), budget=budget)

    res: list[Polynomial] = []
    for p in K.generators:
        q = p.exact_div(f)
        if q is None:
            r, cert = mora_nf_certified(p, [f], I.order, budget=budget)
            if not r.is_zero():
                raise ExactDivisionFailure(p, f)
            (q,) = cert.coefficients
        res.append(q)
    return I.with_generators(res)


@trace_function(tracer)
def colon(I: Ideal, J: Ideal, *, budget: int | None = None) -> Ideal:
    _check_compatible(I, J)
    if J.is_zero():
        raise PreconditionViolation("colon by the zero ideal")

    res: Ideal | None = None
    for f in J.generators:
        cur = colon_poly(I, f, budget=budget)
        res = cur if res is None else intersect(res, cur, budget=budget)

    assert res is not None
    return res


# >>> Truncated dimensions


def _leading_monomials_local_degree(I: Ideal, budget: int | None) -> tuple[Monomial, ...]:
    # L(I + m^N) = L(I) + m^N for the local degree order, so every
    # truncation reuses one standard basis.
    res = I._cache.get("local_degree_lms")
    if res is not None:
        return res

    J = I.with_order(local_degree_order(I.ring.nvars))
    res = std_basis(J, budget=budget).minimal_leading_monomials()
    return I._cache.setdefault("local_degree_lms", res)


def _standard_counts(I: Ideal, budget: int | None) -> Iterator[int]:
    """Number of standard monomials of each degree 0, 1, 2, ..."""
    n = I.ring.nvars
    if I.is_zero():
        d = 0
        while True:
            yield comb(d + n - 1, n - 1)
            d += 1

    lms = _leading_monomials_local_degree(I, budget)
    d = 0
    while True:
        yield sum(
            1
            for m in I.ring.monomials_of_degree(d)
            if not any(monomial_divides(lm, m) for lm in lms)
        )
        d += 1


def truncated_dim(I: Ideal, N: int, *, budget: int | None = None) -> int:
    """`dim O/(I + m^N)`."""
    if N < 1:
        raise ValueError("truncation order must be positive")

    res = 0
    counts = _standard_counts(I, budget)
    for _ in range(N):
        res += next(counts)
    return res


def coordinate_indices(g: Ideal) -> list[int]:
    """Variables generating `g`; raises if `g` is not a coordinate ideal."""
    res: list[int] = []
    for p in g.generators:
        if len(p) != 1:
            raise PreconditionViolation(f"{p} is not a coordinate variable")
        (m,) = p.terms
        if sum(m) != 1:
            raise PreconditionViolation(f"{p} is not a coordinate variable")
        res.append(m.index(1))
    return sorted(set(res))


def in_coordinate_ideal(f: Polynomial, indices: list[int]) -> bool:
    """Membership in the ideal of the given variables, checked monomial-wise."""
    return all(any(m[i] > 0 for i in indices) for m in f.terms)


@trace_function(tracer)
def relative_dim_g(
    I: Ideal, g: Ideal, *, n_max: int | None = None, budget: int | None = None
) -> int:
    """`dim g/I` for `I` inside the coordinate ideal `g`.

    With `M = g/I`, `truncated_dim(I, N) - truncated_dim(g, N)` is
    `dim M/m^(N-1)M`. It grows strictly until it is constant, so two equal
    consecutive values of the schedule N = 6, 8, 10, ... give `dim M`.
    """
    _check_compatible(I, g)
    if n_max is None:
        n_max = config.n_max

    indices = coordinate_indices(g)
    for p in I.generators:
        if not in_coordinate_ideal(p, indices):
            raise PreconditionViolation(f"{p} is not in the ideal {list(g.generators)}")

    counts_i = _standard_counts(I, budget)
    counts_g = _standard_counts(g, budget)

    diff = 0
    prev: int | None = None
    N = 0
    while True:
        target = 6 if prev is None else N + 2
        if target > n_max:
            break

        while N < target:
            diff += next(counts_i) - next(counts_g)
            N += 1

        if prev is not None and diff == prev:
            get_current_span().set_attributes({"N": N, "dim": diff})
            return diff
        prev = diff

    raise NoStabilization(n_max)
