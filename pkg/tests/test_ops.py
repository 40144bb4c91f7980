import random
from itertools import permutations

import pytest
from conftest import ideal, poly, random_poly

from line_milnor.engine.ideal import ideal_equal, is_member
from line_milnor.engine.ops import (
    NoStabilization,
    PreconditionViolation,
    colon,
    colon_poly,
    ideal_product,
    ideal_sum,
    intersect,
    relative_dim_g,
    truncated_dim,
)
from line_milnor.errors import ExitStatus

g = ideal("y", "z")


def test_sum_product() -> None:
    assert ideal_sum(ideal("y"), ideal("z")).generators == ideal("y", "z").generators
    assert ideal_product(ideal("y"), ideal("y", "z")).generators == (
        poly("y^2"),
        poly("y*z"),
    )


def test_intersect() -> None:
    assert ideal_equal(intersect(ideal("x"), ideal("y")), ideal("x*y"))
    assert ideal_equal(intersect(g, ideal("x")), ideal("x*y", "x*z"))
    assert ideal_equal(intersect(ideal("y"), ideal("y")), ideal("y"))


def test_intersect_local_units() -> None:
    # (1 - x) is a unit, so this is (x) ∩ (y)
    assert ideal_equal(intersect(ideal("x - x^2"), ideal("y")), ideal("x*y"))


def test_intersect_membership(rng: random.Random) -> None:
    I = ideal("x^2", "y - x*z")
    J = ideal("y", "z^2")
    K = intersect(I, J)

    samples = [
        *(random_poly(rng) * a * b for a in I for b in J),
        *(random_poly(rng) * a for a in I),
        *(random_poly(rng) * b for b in J),
        *(random_poly(rng) for _ in range(5)),
    ]
    for p in samples:
        expected = is_member(p, I) and is_member(p, J)
        assert is_member(p, K) == expected


def test_intersect_generator_order() -> None:
    I = ideal("x^2", "y - x*z")
    J = ideal("y", "z^2")
    assert ideal_equal(intersect(I, J), intersect(J, I))
    assert ideal_equal(
        intersect(I, J), intersect(ideal("y - x*z", "x^2"), ideal("z^2", "y"))
    )


def test_colon() -> None:
    assert ideal_equal(colon(ideal("x*y", "z"), ideal("y")), ideal("x", "z"))
    assert ideal_equal(colon(ideal("x^2"), ideal("x")), ideal("x"))
    assert ideal_equal(colon(ideal("y", "z^2"), ideal("z")), ideal("y", "z"))


def test_colon_unit_factor() -> None:
    # dividing by (1 - x)*y: only a unit multiple of the divisor divides
    res = colon_poly(ideal("x*y", "z"), poly("y - x*y"))
    assert ideal_equal(res, ideal("x", "z"))


def test_colon_by_ideal() -> None:
    assert ideal_equal(colon(ideal("x*y", "x*z"), g), ideal("x"))


def test_colon_zero() -> None:
    with pytest.raises(PreconditionViolation) as e:
        colon(ideal("x"), ideal("0"))
    assert e.value.status == ExitStatus.precondition


def test_colon_soundness() -> None:
    I = ideal("x^2*y", "z^2 - x*y", "y^3")
    J = ideal("x", "y*z")
    for q in colon(I, J):
        for f in J:
            assert is_member(q * f, I)


@pytest.mark.parametrize(
    ("I", "J"),
    [
        (("x*y", "x*z"), ("y", "z")),
        (("x^2*y", "z^2 - x*y", "y^3"), ("x", "y*z")),
        (("x*y", "y^2", "z^2"), ("x", "y", "z")),
        (("y^2 - x*z", "z^2"), ("y", "x*z", "z - x*y")),
    ],
)
def test_colon_generator_order(I: tuple[str, ...], J: tuple[str, ...]) -> None:
    expected = colon(ideal(*I), ideal(*J))
    for perm in permutations(J):
        assert ideal_equal(colon(ideal(*I), ideal(*perm)), expected)


def test_truncated_dim() -> None:
    assert truncated_dim(g, 4) == 4
    assert truncated_dim(ideal("x^3", "y", "z"), 10) == 3
    assert truncated_dim(ideal(), 3) == 10


def test_relative_dim_g() -> None:
    I = ideal_sum(ideal_product(ideal("x^2"), g), ideal_product(g, g))
    assert relative_dim_g(I, g) == 4
    assert relative_dim_g(g, g) == 0


def test_relative_dim_g_not_finite() -> None:
    with pytest.raises(NoStabilization) as e:
        relative_dim_g(ideal("y"), g, n_max=12)
    assert e.value.status == ExitStatus.no_stabilization
    assert "N_max too small" in str(e.value)


def test_relative_dim_g_precondition() -> None:
    with pytest.raises(PreconditionViolation):
        relative_dim_g(ideal("x"), g)
    with pytest.raises(PreconditionViolation):
        relative_dim_g(ideal("y"), ideal("y + z"))


def test_truncated_differences_monotone() -> None:
    I = ideal("x*y + z^2 + y*z", "y^2", "y*z - x^3*y", "z^3")
    values = [truncated_dim(I, N) - truncated_dim(g, N) for N in range(1, 16)]
    assert values == sorted(values)

    # strictly increasing until constant
    first = values.index(values[-1])
    assert all(a < b for a, b in zip(values[:first], values[1 : first + 1], strict=True))
    assert values[first:] == [values[-1]] * (len(values) - first)


def test_truncated_dim_whole_ring() -> None:
    assert truncated_dim(ideal("1 + x"), 5) == 0
