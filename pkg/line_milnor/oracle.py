"""Dimensions and memberships from exact linear algebra on truncated jets.

Nothing here uses the standard-basis engine: `O/(I + m^N)` is the quotient
of the polynomials of degree `< N` by the span of the truncated products
`mu * g`, so its dimension is a rank computation.
"""

from collections.abc import Iterable, Iterator
from math import comb

from latch_o11y.o11y import trace_function
from opentelemetry.trace import get_current_span, get_tracer
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .algebra.poly import Monomial, Polynomial, Ring
from .config import config
from .engine.ideal import Ideal

tracer = get_tracer(__name__)


def _monomials_below(ring: Ring, N: int) -> Iterator[Monomial]:
    for d in range(N):
        yield from ring.monomials_of_degree(d)


def _rows(I: Ideal, N: int) -> Iterator[Polynomial]:
    for g in I.generators:
        o = g.order()
        for mu in _monomials_below(I.ring, N - o):
            yield g.mul_term(mu, 1).truncate(N)


def _matrix(
    rows: Iterable[Polynomial], columns: dict[Monomial, int]
) -> DomainMatrix:
    data: dict[int, dict[int, object]] = {}
    for p in rows:
        if p.is_zero():
            continue
        data[len(data)] = {
            columns[m]: QQ(c.numerator, c.denominator) for m, c in p.items()
        }
    return DomainMatrix(data, (len(data), len(columns)), QQ)


def _columns(ring: Ring, N: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(_monomials_below(ring, N))}


def _rank(M: DomainMatrix) -> int:
    if M.shape[0] == 0:
        return 0
    return M.rank()


@trace_function(tracer)
def jet_dim(I: Ideal, N: int) -> int:
    """`dim O/(I + m^N)`."""
    if N < 1:
        raise ValueError("truncation order must be positive")

    n = I.ring.nvars
    ncols = comb(N - 1 + n, n)
    if I.is_zero():
        return ncols

    columns = _columns(I.ring, N)
    M = _matrix(_rows(I, N), columns)
    r = _rank(M)

    get_current_span().set_attributes({"N": N, "rows": M.shape[0], "rank": r})
    return ncols - r


@trace_function(tracer)
def jet_member(f: Polynomial, I: Ideal, N: int) -> bool:
    """Whether `f` lies in `I + m^N`."""
    if N < 1:
        raise ValueError("truncation order must be positive")

    target = f.truncate(N)
    if target.is_zero():
        return True
    if I.is_zero():
        return False

    columns = _columns(I.ring, N)
    rows = list(_rows(I, N))
    base = _rank(_matrix(rows, columns))
    return _rank(_matrix([*rows, target], columns)) == base


def stable_jet_dim(
    I: Ideal, n_start: int = 1, n_max: int | None = None
) -> tuple[int, int] | None:
    """`(N, dim)` for the first N with `jet_dim(I, N) == jet_dim(I, N - 1)`.

    `dim O/(I + m^N)` grows strictly until it is constant, so the repeated
    value is `dim O/I`. None if no repeat happens up to `n_max`.
    """
    if n_max is None:
        n_max = config.oracle_n_max

    prev: int | None = None
    for N in range(max(n_start, 1), n_max + 1):
        cur = jet_dim(I, N)
        if prev is not None and cur == prev:
            return N, cur
        prev = cur

    return None
