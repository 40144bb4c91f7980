import random
from fractions import Fraction

import pytest
from conftest import local, poly, random_poly, weighted, xyz

from line_milnor.algebra.derivation import Derivation, apply_derivation
from line_milnor.algebra.order import (
    MixedElimination,
    Weights,
    ZeroPolynomialError,
    elimination_order,
    is_weighted_homogeneous,
    leading_monomial,
    leading_term,
    weighted_degree,
)
from line_milnor.algebra.parse import (
    PolySyntaxError,
    UnknownVariable,
    format_poly,
    parse_poly,
)
from line_milnor.algebra.poly import Ring, monomial_mul
from line_milnor.algebra.weights import AmbiguousWeights, NoWeights, infer_weights
from line_milnor.errors import ExitStatus

# >>> Parsing


def test_parse_terms() -> None:
    p = poly("x^2*y - 1/2*z")
    assert dict(p.terms) == {(2, 1, 0): Fraction(1), (0, 0, 1): Fraction(-1, 2)}


def test_parse_zero() -> None:
    assert poly("0").is_zero()
    assert len(poly("x - x")) == 0


def test_parse_x_ls() -> None:
    assert poly("x^1*y + x^0*z^2 + y*z") == poly("x*y + z^2 + y*z")


def test_parse_nested() -> None:
    assert poly("-(x + 1)^2") == poly("-x^2 - 2*x - 1")
    assert poly("2/4*x") == poly("1/2*x")
    assert poly("3 / 6") == Fraction(1, 2)


@pytest.mark.parametrize(
    ("text", "position"),
    [
        ("x y", 2),
        ("x^", 2),
        ("(x + y", 6),
        ("x * * y", 4),
        ("1/0", 0),
        ("x^y", 2),
    ],
)
def test_parse_syntax_errors(text: str, position: int) -> None:
    with pytest.raises(PolySyntaxError) as e:
        poly(text)
    assert e.value.position == position
    assert e.value.status == ExitStatus.bad_input


def test_parse_unknown_variable() -> None:
    with pytest.raises(UnknownVariable) as e:
        poly("x + w")
    assert e.value.name == "w"
    assert e.value.position == 4


def test_print_parse_round_trip(rng: random.Random) -> None:
    for _ in range(50):
        p = random_poly(rng, terms=6)
        assert parse_poly(format_poly(p), xyz) == p


def test_print_order() -> None:
    # decreasing in the local degree order: 1 leads
    assert format_poly(poly("x^2 + 1 - 1/2*z")) == "1 - 1/2*z + x^2"


# >>> Ring laws


def test_ring_laws(rng: random.Random) -> None:
    for _ in range(30):
        a, b, c = (random_poly(rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == 0
        assert all(x != 0 for x in (a * b).terms.values())


def test_pow() -> None:
    assert poly("x + y") ** 3 == poly("x^3 + 3*x^2*y + 3*x*y^2 + y^3")
    assert poly("x + y") ** 0 == 1


def test_restrict_to_axis() -> None:
    assert poly("x^2 + x*y + 3*z + 1").restrict_to_axis() == poly("x^2 + 1")


def test_exact_div() -> None:
    assert poly("x^2*y - x*y^2").exact_div(poly("x - y")) == poly("x*y")
    assert poly("x^2 + 1").exact_div(poly("x")) is None


def test_ring_change() -> None:
    ring_t = xyz.extend("t")
    p = poly("x*y + z")
    assert p.extend(ring_t).contract(xyz) == p
    with pytest.raises(ValueError):
        parse_poly("t*x", ring_t).contract(xyz)


def test_duplicate_variables() -> None:
    with pytest.raises(ValueError):
        Ring(("x", "x"))


# >>> Orders


def test_leading_term_local() -> None:
    assert leading_term(poly("y + z^2"), local) == ((0, 1, 0), 1)
    assert leading_term(poly("1 + x"), local) == ((0, 0, 0), 1)
    assert leading_term(poly("x^3 + z"), weighted(1, 3, 2)) == ((0, 0, 1), 1)


def test_leading_term_zero() -> None:
    with pytest.raises(ZeroPolynomialError):
        leading_term(xyz.zero(), local)


def test_local_tie_break() -> None:
    # equal degree: the larger exponent in the last differing position loses
    assert leading_monomial(poly("x*z + y^2"), local) == (0, 2, 0)
    assert leading_monomial(poly("y*z + x*z"), local) == (1, 0, 1)


def test_weighted_degree() -> None:
    w = Weights((1, 3, 2))
    assert weighted_degree((2, 0, 1), w) == 4
    assert weighted_degree((0, 0, 0), w) == 0
    assert weighted_degree((0, 1, 1), (1, 2, 1)) == 3


def _random_monomial(rng: random.Random, n: int) -> tuple[int, ...]:
    return tuple(rng.randint(0, 3) for _ in range(n))


@pytest.mark.parametrize(
    "order",
    [local, weighted(1, 3, 2), MixedElimination(frozenset({0}), weighted(2, 1))],
)
def test_order_multiplicative(rng: random.Random, order) -> None:
    for _ in range(200):
        m1, m2, m = (_random_monomial(rng, 3) for _ in range(3))
        if order.key(m1) > order.key(m2):
            assert order.key(monomial_mul(m, m1)) > order.key(monomial_mul(m, m2))


def test_elimination_order_prefers_block() -> None:
    ord = elimination_order(local)
    # t beats every monomial free of t, including 1
    assert ord.key((0, 0, 0, 1)) > ord.key((0, 0, 0, 0))
    assert ord.key((0, 0, 0, 1)) > ord.key((5, 0, 0, 0))
    assert not ord.is_local()


def test_leading_term_multiplicative(rng: random.Random) -> None:
    for order in (local, weighted(1, 2, 3)):
        for _ in range(30):
            p, q = random_poly(rng), random_poly(rng)
            if p.is_zero() or q.is_zero():
                continue
            (mp, cp), (mq, cq) = leading_term(p, order), leading_term(q, order)
            assert leading_term(p * q, order) == (monomial_mul(mp, mq), cp * cq)


# >>> Derivations


def test_apply_derivation() -> None:
    euler = Derivation.euler(xyz, Weights.uniform(3))
    g = poly("y^2 - y*z + 1/2*z^2")
    assert apply_derivation(euler, g) == g * 2

    sigma_xy = Derivation((poly("x + z"), poly("-y"), xyz.zero()))
    assert sigma_xy(poly("y")) == poly("-y")
    assert sigma_xy(xyz.constant(1)) == 0


def test_leibniz(rng: random.Random) -> None:
    for _ in range(20):
        xi = Derivation(tuple(random_poly(rng) for _ in range(3)))
        f, g = random_poly(rng), random_poly(rng)
        assert xi(f * g) == f * xi(g) + g * xi(f)


def test_euler_identity(rng: random.Random) -> None:
    w = Weights((1, 3, 2))
    euler = Derivation.euler(xyz, w)
    for _ in range(20):
        d = rng.randint(1, 7)
        monos = [
            m for k in range(d + 1) for m in xyz.monomials_of_degree(k)
            if weighted_degree(m, w) == d
        ]
        p = sum(
            (xyz.monomial(m, rng.randint(-3, 3)) for m in monos), start=xyz.zero()
        )
        assert is_weighted_homogeneous(p, w)
        assert euler(p) == p * d


def test_derivation_shape() -> None:
    with pytest.raises(ValueError):
        Derivation((poly("x"), poly("y")))


# >>> Weights


def test_infer_weights() -> None:
    assert infer_weights([poly("x^1*y + x^0*z^2 + y*z")]) == Weights((1, 1, 1))
    assert infer_weights([poly("x^2*y + x*z^2 + y*z")]) == Weights((1, 3, 2))


def test_infer_weights_ambiguous() -> None:
    with pytest.raises(AmbiguousWeights) as e:
        infer_weights([poly("x*y")])
    assert e.value.status == ExitStatus.precondition


def test_infer_weights_none() -> None:
    with pytest.raises(NoWeights):
        infer_weights([poly("x*y + x^2*y + z^2")])
