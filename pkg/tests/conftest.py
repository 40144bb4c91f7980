import random
from fractions import Fraction
from dataclasses import replace
from functools import cache

import pytest

from line_milnor.algebra.order import LocalWeighted, Weights, local_degree_order
from line_milnor.algebra.parse import parse_poly
from line_milnor.algebra.poly import Polynomial, Ring
from line_milnor.config import config
from line_milnor.engine.ideal import Ideal
from line_milnor.invariants import Problem
from line_milnor.problem import ExampleFunction, build_problem, example_problem

xyz = Ring(("x", "y", "z"))
local = local_degree_order(3)


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--seed", type=int, default=config.seed, help="Seed of randomized tests."
    )


@pytest.fixture
def rng(request: pytest.FixtureRequest) -> random.Random:
    return random.Random(request.config.getoption("--seed"))


def poly(text: str, ring: Ring = xyz) -> Polynomial:
    return parse_poly(text, ring)


def ideal(*gens: str, order: LocalWeighted = local, ring: Ring = xyz) -> Ideal:
    return Ideal.of(ring, order, [poly(g, ring) for g in gens])


def weighted(*w: int) -> LocalWeighted:
    return LocalWeighted(Weights(w))


def random_poly(
    rng: random.Random,
    ring: Ring = xyz,
    *,
    terms: int = 4,
    max_degree: int = 3,
    constant: bool = True,
) -> Polynomial:
    res: dict[tuple[int, ...], Fraction] = {}
    for _ in range(terms):
        d = rng.randint(0 if constant else 1, max_degree)
        monos = list(ring.monomials_of_degree(d))
        m = rng.choice(monos)
        res[m] = res.get(m, Fraction(0)) + Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return Polynomial(ring, res)


@cache
def x_ls(l: int, s: int, function: ExampleFunction) -> Problem:
    """Problems are cached across tests; each caches its own invariants."""
    return build_problem(example_problem(l, s, function))


@cache
def x_ls_with(l: int, s: int, f: str) -> Problem:
    return build_problem(replace(example_problem(l, s, "g"), f=f))
