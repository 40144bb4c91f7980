from dataclasses import replace

import pytest
from conftest import poly, x_ls, x_ls_with, xyz

from line_milnor.algebra.order import Weights
from line_milnor.errors import ExitStatus
from line_milnor.invariants import (
    DegenerateQuadric,
    DegenerateTorsion,
    NotAligned,
    NotInGSquared,
    NotIsolatedSeries,
    NotPrimitive,
    check_constancy,
    delta_f,
    e_k,
    euler_characteristic,
    exact_sequence_check,
    f_k,
    in_g_squared,
    iomdin_consistency,
    is_primitive_member,
    jacobian_number,
    lemma42_check,
    milnor_series,
    nu,
    q44_check,
    quadratic_matrix,
    series_table,
    sigma_mult,
    sweep_series,
    torsion_number,
)
from line_milnor.engine.ops import PreconditionViolation
from line_milnor.report import Q44Verdict
from line_milnor.space import SpacePair, make_space_pair

g10 = x_ls(1, 0, "g")
f10 = x_ls(1, 0, "f")
y10 = x_ls_with(1, 0, "y")


def space(h: str, weights: tuple[int, ...], **kwargs) -> SpacePair:
    return make_space_pair(xyz, [poly(h)], Weights(weights), **kwargs)


# >>> Primitive ideal


def test_primitive_member() -> None:
    assert is_primitive_member(g10)
    assert is_primitive_member(f10)
    assert not is_primitive_member(x_ls_with(1, 0, "x"))


def test_primitive_contains_g_squared_plus_h() -> None:
    for f in ("y^2", "x*y*z + z^3", "x*y + z^2 + y*z", "y^2 - x^4*z^2 + 3*y*z"):
        assert is_primitive_member(x_ls_with(1, 0, f))


def test_not_primitive() -> None:
    P = x_ls_with(1, 0, "x")
    with pytest.raises(NotPrimitive) as e:
        jacobian_number(P)
    assert e.value.status == ExitStatus.precondition
    assert "primitive ideal" in str(e.value.data)

    with pytest.raises(NotPrimitive):
        nu(P)


def test_problem_must_vanish_at_origin() -> None:
    with pytest.raises(PreconditionViolation):
        replace(g10, f=poly("1 + y"))


# >>> Jacobian number, nu and chi


@pytest.mark.parametrize(
    ("P", "j", "v", "chi"),
    [(g10, 2, 1, -2), (f10, 0, 0, 1), (y10, 0, 0, 1)],
)
def test_invariants_x10(P, j: int, v: int, chi: int) -> None:
    assert jacobian_number(P) == j
    assert nu(P) == v
    assert euler_characteristic(P) == chi
    assert check_constancy(P)


def test_jacobian_number_cached() -> None:
    assert jacobian_number(g10) == jacobian_number(g10)
    assert g10._cache["jacobian_number"] == 2


# >>> The series f_k


def test_f_k() -> None:
    assert f_k(f10, 2) == poly("y + 1/2*z^2 + 1/3*x^3")
    with pytest.raises(PreconditionViolation):
        f_k(f10, 0)


@pytest.mark.parametrize(("P", "k", "mu"), [(f10, 5, 6), (y10, 3, 4), (g10, 10, 14)])
def test_milnor_series(P, k: int, mu: int) -> None:
    assert milnor_series(P, k) == mu


@pytest.mark.parametrize("k", range(5, 10))
def test_iomdin_consistency_f(k: int) -> None:
    assert iomdin_consistency(f10, k)


@pytest.mark.parametrize("k", range(10, 14))
def test_iomdin_consistency_g(k: int) -> None:
    assert iomdin_consistency(g10, k)


def test_iomdin_consistency_y() -> None:
    assert iomdin_consistency(y10, 3)


def test_not_isolated_series() -> None:
    P = x_ls_with(1, 0, "0")
    with pytest.raises(NotIsolatedSeries) as e:
        milnor_series(P, 3)
    assert e.value.k == 3
    assert e.value.status == ExitStatus.not_finite


def test_series_table() -> None:
    rows = series_table(g10, 10, 12)
    assert [r.mu for r in rows] == [14, 15, 16]
    assert all(r.consistent and r.isolated for r in rows)
    assert [r.predicted for r in rows] == [14, 15, 16]

    with pytest.raises(PreconditionViolation):
        series_table(g10, 5, 4)


def test_sweep_series() -> None:
    rows = sweep_series(f10)
    assert len(rows) >= 3
    assert all(r.consistent for r in rows[-3:])
    assert [r.k for r in rows] == list(range(1, len(rows) + 1))


def test_sweep_series_count() -> None:
    rows = sweep_series(f10, k_start=4, count=2)
    assert rows[0].k == 4
    assert all(r.consistent for r in rows[-2:])


# >>> e_k, sigma and mult


def test_e_k() -> None:
    assert e_k(f10, 4) == 5


@pytest.mark.parametrize("P", [g10, f10, y10])
def test_sigma_mult(P) -> None:
    assert sigma_mult(P) == (1, 1)


@pytest.mark.parametrize("k", [10, 11, 12])
def test_e_k_linear(k: int) -> None:
    sigma, mult = sigma_mult(g10)
    assert e_k(g10, k) == sigma + k * mult


def test_exact_sequence() -> None:
    assert exact_sequence_check(f10, 6)


def test_exact_sequence_quadratic() -> None:
    assert exact_sequence_check(g10, 10)


# >>> The intersection identity


def test_intersection_identity() -> None:
    assert lemma42_check(f10, 10)


def test_intersection_identity_weighted() -> None:
    assert lemma42_check(x_ls(2, 1, "g"), 15)


# >>> Torsion number and the quadratic part


def test_torsion_number() -> None:
    assert torsion_number(g10.space) == 1
    assert torsion_number(x_ls(2, 1, "g").space) == 2
    assert torsion_number(space("y + z^2", (1, 2, 1))) == 0


def test_not_aligned() -> None:
    X = space("x*y + x*z", (1, 1, 1), check_isolated=False)
    with pytest.raises(NotAligned) as e:
        torsion_number(X)
    assert e.value.name == "z"
    assert e.value.status == ExitStatus.precondition


def test_degenerate_torsion() -> None:
    X = space("y^2 + z^2", (1, 1, 1), check_isolated=False)
    with pytest.raises(DegenerateTorsion) as e:
        torsion_number(X)
    assert e.value.status == ExitStatus.not_finite


def test_in_g_squared() -> None:
    assert in_g_squared(poly("y^2 - y*z + 1/2*z^2"))
    assert in_g_squared(poly("x^5*y*z"))
    assert not in_g_squared(poly("y + 1/2*z^2"))


def test_quadratic_matrix() -> None:
    H = quadratic_matrix(g10.space, poly("y^2 - y*z + 1/2*z^2"))
    assert H == [[poly("1"), poly("-1/2")], [poly("-1/2"), poly("1/2")]]


@pytest.mark.parametrize(
    ("f", "delta"),
    [("y^2 - y*z + 1/2*z^2", 0), ("y^2 + x^3*z^2", 3), ("x*y^2 + x^2*z^2 + y*z^3", 2)],
)
def test_delta(f: str, delta: int) -> None:
    assert delta_f(g10.space, poly(f)) == delta


def test_delta_errors() -> None:
    with pytest.raises(DegenerateQuadric):
        delta_f(g10.space, poly("y*z"))
    with pytest.raises(NotInGSquared) as e:
        delta_f(g10.space, poly("y"))
    assert e.value.status == ExitStatus.precondition


@pytest.mark.parametrize(
    "f", ["y^2 - y*z + 1/2*z^2", "y^2 + x^3*z^2", "y^3 + x*y*z^2 + x^2*z^2 + y^2*z"]
)
def test_delta_extraction_rule(f: str) -> None:
    X = g10.space
    assert delta_f(X, poly(f), "least") == delta_f(X, poly(f), "greatest")


# >>> nu against 2*lambda + delta - 1


def test_nu_matches_torsion() -> None:
    v = q44_check(g10)
    assert v == Q44Verdict("holds", nu=1, rhs=1)
    assert v.describe() == "holds (nu=1, 2*lambda+delta-1=1)"


def test_nu_matches_torsion_x20() -> None:
    assert q44_check(x_ls(2, 0, "g")) == Q44Verdict("holds", nu=3, rhs=3)


def test_nu_against_torsion_inapplicable() -> None:
    v = q44_check(f10)
    assert v.verdict == "inapplicable"
    assert v.nu is None
    assert v.describe().startswith("inapplicable (")
