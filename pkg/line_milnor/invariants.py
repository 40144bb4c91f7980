"""Invariants of a function germ on a space pair, and the identities linking them.

Notation: `g` is the ideal of the line (all variables but `x`), `h` the ideal
of `X`, `J_X(f)` the image of `f` under the logarithmic vector fields, split
into `J0 = (xi_E(f))` and `J1 = D1(f)`.

    j(f)   = dim g/(h + J_X(f))
    nu     = dim O/(g + (J1 + h) : J0)
    chi(F) = 1 + (-1)^(dim X - 1) * (j(f) + nu)

The series `f_k = f + x^(k+1)/(k+1)` has isolated singularities for large k
and then `mu(f_k) = k + 1 + j(f) + nu`, which checks the colon-ideal path
against a direct dimension count.
"""

from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal, Self

from latch_o11y.o11y import trace_function
from opentelemetry.trace import get_current_span, get_tracer

from .algebra.poly import Monomial, Polynomial
from .config import config
from .derlog import SplitDerlog, jacobian_ideal
from .engine.ideal import INFINITE, Dim, Ideal, ideal_equal, vdim
from .engine.ops import (
    NoStabilization,
    PreconditionViolation,
    colon,
    ideal_sum,
    intersect,
    relative_dim_g,
)
from .errors import NotFiniteError, PreconditionError
from .report import EkSample, InvariantReport, Q44Verdict, SeriesRow
from .space import SpacePair

tracer = get_tracer(__name__)

# >>> Error classes


class NotPrimitive(PreconditionError):
    def __init__(self: Self) -> None:
        super().__init__("f is not in the primitive ideal")


class NotTransversalA1(NotFiniteError):
    def __init__(self: Self, n_max: int) -> None:
        super().__init__(
            "the Jacobian number is not finite (f does not have transversal A1"
            f" singularities along the line), no stabilization up to N = {n_max}"
        )
        self.n_max = n_max


class InfiniteNu(NotFiniteError):
    def __init__(self: Self) -> None:
        super().__init__(
            "nu is infinite: the transversal type of f is not constant along the line"
        )


class NotIsolatedSeries(NotFiniteError):
    def __init__(self: Self, k: int) -> None:
        super().__init__(f"f_{k} is not isolated at k = {k}; retry with a larger k")
        self.k = k


class InfiniteDimension(NotFiniteError):
    def __init__(self: Self, what: str) -> None:
        super().__init__(f"{what} is infinite")
        self.what = what


class NotAligned(PreconditionError):
    def __init__(self: Self, i: int, name: str, p: int) -> None:
        super().__init__(
            f"coordinates are not aligned: equation {i} has a term linear in {name};"
            f" change the y-coordinates so that the linear parts only involve the"
            f" first {p} of them"
        )
        self.i = i
        self.name = name


class DegenerateTorsion(NotFiniteError):
    def __init__(self: Self) -> None:
        super().__init__(
            "the determinant of the linear coefficients vanishes on the line; it"
            " must be a non-zero divisor"
        )


class NotInGSquared(PreconditionError):
    def __init__(self: Self, f: Polynomial) -> None:
        super().__init__(f"{f} is not in the square of the ideal of the line")
        self.f = f


class DegenerateQuadric(NotFiniteError):
    def __init__(self: Self) -> None:
        super().__init__("the determinant of the quadratic part vanishes on the line")


# >>> Problems


@dataclass(frozen=True)
class Limits:
    iteration_budget: int
    n_max: int
    k_limit: int
    sweep_length: int

    @classmethod
    def from_config(
        cls: type[Self],
        *,
        iteration_budget: int | None = None,
        n_max: int | None = None,
        k_limit: int | None = None,
        sweep_length: int | None = None,
    ) -> Self:
        return cls(
            iteration_budget=(
                config.iteration_budget if iteration_budget is None else iteration_budget
            ),
            n_max=config.n_max if n_max is None else n_max,
            k_limit=config.k_limit if k_limit is None else k_limit,
            sweep_length=config.sweep_length if sweep_length is None else sweep_length,
        )


@dataclass(frozen=True)
class Problem:
    """A function germ `f` vanishing at 0 on the space pair `space`."""

    space: SpacePair
    f: Polynomial
    derlog: SplitDerlog
    limits: Limits = field(default_factory=Limits.from_config)

    _cache: dict[str, Any] = field(
        default_factory=dict, init=False, compare=False, repr=False
    )

    def __post_init__(self: Self) -> None:
        if self.f.ring != self.space.ring:
            raise PreconditionViolation(
                f"f lives in {self.f.ring.names!r}, X in {self.space.vars!r}"
            )
        if self.f.constant_term() != 0:
            raise PreconditionViolation(f"{self.f} does not vanish at the origin")

    @property
    def budget(self: Self) -> int:
        return self.limits.iteration_budget

    def cached(self: Self, key: str, fn: Callable[[], Any]) -> Any:
        if key in self._cache:
            return self._cache[key]
        return self._cache.setdefault(key, fn())


def _jacobian(P: Problem, f: Polynomial) -> tuple[Ideal, Ideal, Ideal]:
    return jacobian_ideal(P.derlog, f)


def _finite(d: Dim, what: str) -> int:
    if d is INFINITE:
        raise InfiniteDimension(what)
    return d


# >>> Primitive ideal


def is_primitive_member(P: Problem) -> bool:
    X = P.space
    if not X.in_sigma(P.f):
        return False
    return all(X.in_sigma(xi(P.f)) for xi in P.derlog.all())


def _require_primitive(P: Problem) -> None:
    if not P.cached("primitive", lambda: is_primitive_member(P)):
        raise NotPrimitive


# >>> Jacobian number and nu


@trace_function(tracer)
def jacobian_number(P: Problem) -> int:
    _require_primitive(P)

    def compute() -> int:
        X = P.space
        _, _, JX = _jacobian(P, P.f)
        try:
            return relative_dim_g(
                ideal_sum(X.h_ideal, JX),
                X.sigma,
                n_max=P.limits.n_max,
                budget=P.budget,
            )
        except NoStabilization as e:
            raise NotTransversalA1(e.n_max) from e

    res = P.cached("jacobian_number", compute)
    get_current_span().set_attribute("j", res)
    return res


def nu_ideal(P: Problem) -> Ideal:
    """`g + (J1 + h) : J0`"""
    _require_primitive(P)

    def compute() -> Ideal:
        X = P.space
        J0, J1, _ = _jacobian(P, P.f)
        if J0.is_zero():
            raise PreconditionViolation("xi_E(f) vanishes identically")
        return ideal_sum(X.sigma, colon(ideal_sum(J1, X.h_ideal), J0, budget=P.budget))

    return P.cached("nu_colon", compute)


@trace_function(tracer)
def nu(P: Problem) -> int:
    res = P.cached("nu", lambda: vdim(nu_ideal(P), budget=P.budget))
    if res is INFINITE:
        raise InfiniteNu
    get_current_span().set_attribute("nu", res)
    return res


def euler_characteristic(P: Problem) -> int:
    j = jacobian_number(P)
    v = nu(P)
    return 1 + (-1) ** (P.space.dim_X - 1) * (j + v)


@trace_function(tracer)
def check_constancy(P: Problem) -> bool:
    """Whether the transversal type of `f` is constant along the line."""
    d = P.cached("nu", lambda: vdim(nu_ideal(P), budget=P.budget))
    return d is not INFINITE


# >>> The series f_k


def f_k(P: Problem, k: int) -> Polynomial:
    if k < 1:
        raise PreconditionViolation(f"k must be positive, got {k}")
    x = P.space.x
    return P.f + (x ** (k + 1)).scale(Fraction(1, k + 1))


@trace_function(tracer)
def milnor_series(P: Problem, k: int) -> int:
    """`mu(f_k) = dim O/(h + J_X(f_k))`."""

    def compute() -> Dim:
        _, _, JX = _jacobian(P, f_k(P, k))
        return vdim(ideal_sum(P.space.h_ideal, JX), budget=P.budget)

    res = P.cached(f"milnor_series_{k}", compute)
    if res is INFINITE:
        raise NotIsolatedSeries(k)

    get_current_span().set_attributes({"k": k, "mu": res})
    return res


@trace_function(tracer)
def e_k(P: Problem, k: int) -> Dim:
    """`dim O/(g + J_X(f_k))`"""

    def compute() -> Dim:
        _, _, JX = _jacobian(P, f_k(P, k))
        return vdim(ideal_sum(P.space.sigma, JX), budget=P.budget)

    return P.cached(f"e_k_{k}", compute)


@trace_function(tracer)
def sigma_mult(P: Problem) -> tuple[Dim, Dim]:
    X = P.space
    _, _, JX = _jacobian(P, X.x)
    sigma = vdim(ideal_sum(X.sigma, JX), budget=P.budget)
    mult = vdim(ideal_sum(X.sigma, X.ideal([X.x])), budget=P.budget)
    return sigma, mult


def iomdin_consistency(P: Problem, k: int) -> bool:
    return milnor_series(P, k) == k + 1 + jacobian_number(P) + nu(P)


def series_row(P: Problem, k: int) -> SeriesRow:
    predicted = k + 1 + jacobian_number(P) + nu(P)
    try:
        mu = milnor_series(P, k)
    except NotIsolatedSeries:
        return SeriesRow(k=k, mu=None, predicted=predicted, consistent=False, isolated=False)

    return SeriesRow(
        k=k, mu=mu, predicted=predicted, consistent=mu == predicted, isolated=True
    )


def series_table(P: Problem, k_min: int, k_max: int) -> list[SeriesRow]:
    if k_min < 1 or k_max < k_min:
        raise PreconditionViolation(f"bad k range {k_min}..{k_max}")
    return [series_row(P, k) for k in range(k_min, k_max + 1)]


@trace_function(tracer)
def sweep_series(
    P: Problem,
    k_start: int = 1,
    count: int | None = None,
    k_limit: int | None = None,
) -> list[SeriesRow]:
    """Rows from `k_start` up to the first `count` consecutive consistent ones."""
    if count is None:
        count = P.limits.sweep_length
    if k_limit is None:
        k_limit = P.limits.k_limit

    res: list[SeriesRow] = []
    run = 0
    for k in range(k_start, k_limit + 1):
        row = series_row(P, k)
        res.append(row)

        run = run + 1 if row.consistent else 0
        if run == count:
            break

    get_current_span().set_attributes({"k_reached": res[-1].k if res else 0, "run": run})
    return res


@trace_function(tracer)
def exact_sequence_check(P: Problem, k: int) -> bool:
    """`mu(f_k) = e_k + dim g/((h + J_X(f_k)) ∩ g)`"""
    X = P.space
    mu = milnor_series(P, k)
    ek = e_k(P, k)
    if ek is INFINITE:
        return False

    _, _, JX = _jacobian(P, f_k(P, k))
    K = intersect(ideal_sum(X.h_ideal, JX), X.sigma, budget=P.budget)
    rel = relative_dim_g(K, X.sigma, n_max=P.limits.n_max, budget=P.budget)
    return mu == ek + rel


# >>> The intersection identity


@trace_function(tracer)
def lemma42_check(P: Problem, k: int) -> bool:
    """`xi_E(f) g + D1(f) + h == (h + J_X(f_k)) ∩ g`"""
    _require_primitive(P)
    X = P.space

    J0, J1, _ = _jacobian(P, P.f)
    e_g = X.ideal(e * y for e in J0.generators for y in X.sigma.generators)
    lhs = ideal_sum(ideal_sum(e_g, J1), X.h_ideal)

    _, _, JX = _jacobian(P, f_k(P, k))
    rhs = intersect(ideal_sum(X.h_ideal, JX), X.sigma, budget=P.budget)

    res = ideal_equal(lhs, rhs, budget=P.budget)
    get_current_span().set_attributes({"k": k, "equal": res})
    return res


def lemma42_sweep(
    P: Problem,
    count: int | None = None,
    k_limit: int | None = None,
    *,
    k_start: int = 1,
) -> int | None:
    """Least k `>= k_start` from which the equality holds for `count` consecutive k."""
    if count is None:
        count = P.limits.sweep_length
    if k_limit is None:
        k_limit = P.limits.k_limit

    start: int | None = None
    for k in range(k_start, k_limit + 1):
        if not lemma42_check(P, k):
            start = None
            continue

        if start is None:
            start = k
        if k - start + 1 == count:
            return start

    return None


# >>> Torsion number and the quadratic part


def _line_linear_coefficients(X: SpacePair) -> list[list[Polynomial]]:
    """`b[i][k]`: coefficient in `x` of the term of `h_i` linear in `y_(k+1)`."""
    ring = X.ring
    n = ring.nvars - 1

    res: list[list[Polynomial]] = []
    for h in X.hs:
        row: list[dict[Monomial, Fraction]] = [{} for _ in range(n)]
        for m, c in h.items():
            ys = m[1:]
            if sum(ys) != 1:
                continue
            k = ys.index(1)
            mono = (m[0],) + (0,) * n
            row[k][mono] = row[k].get(mono, Fraction(0)) + c
        res.append([Polynomial(ring, terms) for terms in row])
    return res


def _check_aligned(X: SpacePair, b: list[list[Polynomial]]) -> None:
    for i, row in enumerate(b):
        for k in range(X.p, len(row)):
            if not row[k].is_zero():
                raise NotAligned(i, X.vars[k + 1], X.p)


def _det(rows: list[list[Polynomial]], one: Polynomial) -> Polynomial:
    if len(rows) == 0:
        return one
    if len(rows) == 1:
        return rows[0][0]

    res = one.ring.zero()
    for j, a in enumerate(rows[0]):
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = a * _det(minor, one)
        res = res + term if j % 2 == 0 else res - term
    return res


@trace_function(tracer)
def torsion_number(X: SpacePair) -> int:
    """`dim O/(g + (b))`, `b` the determinant of the linear coefficients on the line."""
    b = _line_linear_coefficients(X)
    _check_aligned(X, b)

    det = _det([row[: X.p] for row in b], X.ring.constant(1))
    if det.is_zero():
        raise DegenerateTorsion

    # det only involves x
    return det.order()


ExtractionRule = Literal["least", "greatest"]


def _divisor_pairs(ys: Monomial) -> list[tuple[int, int]]:
    return [
        (k, l)
        for k in range(len(ys))
        for l in range(k, len(ys))
        if ys[k] >= 1 and ys[l] >= 1 and (k != l or ys[k] >= 2)
    ]


def in_g_squared(f: Polynomial) -> bool:
    return all(sum(m[1:]) >= 2 for m in f.terms)


def quadratic_matrix(
    X: SpacePair, f: Polynomial, rule: ExtractionRule = "least"
) -> list[list[Polynomial]]:
    """Symmetric `H` with `f = sum H[k][l] y_k y_l`, entries restricted to the line."""
    if not in_g_squared(f):
        raise NotInGSquared(f)

    ring = X.ring
    n = ring.nvars - 1
    H = [[ring.zero() for _ in range(n)] for _ in range(n)]

    for m, c in f.items():
        pairs = _divisor_pairs(m[1:])
        k, l = min(pairs) if rule == "least" else max(pairs)

        rest = list(m)
        rest[k + 1] -= 1
        rest[l + 1] -= 1
        if k == l:
            H[k][k] = H[k][k] + ring.monomial(tuple(rest), c)
        else:
            half = ring.monomial(tuple(rest), c / 2)
            H[k][l] = H[k][l] + half
            H[l][k] = H[l][k] + half

    return [[e.restrict_to_axis() for e in row] for row in H]


@trace_function(tracer)
def delta_f(X: SpacePair, f: Polynomial, rule: ExtractionRule = "least") -> int:
    H = quadratic_matrix(X, f, rule)
    _check_aligned(X, _line_linear_coefficients(X))

    block = [row[X.p :] for row in H[X.p :]]
    det = _det(block, X.ring.constant(1))
    if det.is_zero():
        raise DegenerateQuadric

    return det.order()


@trace_function(tracer)
def q44_check(P: Problem) -> Q44Verdict:
    """Compare `nu` with `2*lambda + delta - 1`; never assumes they agree."""
    X = P.space
    if not in_g_squared(P.f):
        return Q44Verdict("inapplicable", reason="f is not in g^2")

    try:
        lam = torsion_number(X)
        delta = delta_f(X, P.f)
    except (NotAligned, DegenerateTorsion, DegenerateQuadric) as e:
        return Q44Verdict("inapplicable", reason=str(e.data))

    try:
        v = nu(P)
    except InfiniteNu as e:
        return Q44Verdict("inapplicable", reason=str(e.data))

    rhs = 2 * lam + delta - 1
    return Q44Verdict("holds" if v == rhs else "fails", nu=v, rhs=rhs)


# >>> Reports


@trace_function(tracer)
def build_report(P: Problem) -> InvariantReport:
    X = P.space

    j = jacobian_number(P)
    constancy = check_constancy(P)
    v = nu(P)
    chi = euler_characteristic(P)

    try:
        lam: int | None = torsion_number(X)
    except (NotAligned, DegenerateTorsion):
        lam = None
    try:
        delta: int | None = delta_f(X, P.f)
    except (NotInGSquared, NotAligned, DegenerateQuadric):
        delta = None

    sigma, mult = sigma_mult(P)

    series = sweep_series(P)
    samples = []
    for row in series:
        if not row.isolated:
            continue
        d = e_k(P, row.k)
        samples.append(EkSample(row.k, None if d is INFINITE else d))

    x_milnor: int | None = None
    if X.p == 1:
        mu_x = X.milnor_number(budget=P.budget)
        x_milnor = None if mu_x is INFINITE else mu_x

    res = InvariantReport(
        variables=list(X.vars),
        f=str(P.f),
        dim_x=X.dim_X,
        primitive_member=True,
        constancy=constancy,
        jacobian_number=j,
        nu=v,
        chi=chi,
        torsion_number=lam,
        delta=delta,
        q44=q44_check(P),
        sigma=_finite(sigma, "sigma"),
        mult=_finite(mult, "the multiplicity of the line"),
        series=series,
        e_k=samples,
        x_milnor=x_milnor,
    )

    assert res.chi == 1 + (-1) ** (res.dim_x - 1) * (res.jacobian_number + res.nu)
    return res
