from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Protocol, Self, TypeAlias

from .poly import Monomial, Polynomial, Term

# >>> Error classes


class ZeroPolynomialError(ValueError):
    def __init__(self: Self) -> None:
        super().__init__("the zero polynomial has no leading term")


# >>> Weights


@dataclass(frozen=True)
class Weights:
    w: tuple[int, ...]

    def __post_init__(self: Self) -> None:
        if any(x < 1 for x in self.w):
            raise ValueError(f"weights must be positive: {self.w!r}")

    @classmethod
    def uniform(cls: type[Self], n: int) -> Self:
        return cls((1,) * n)

    def __len__(self: Self) -> int:
        return len(self.w)

    def __getitem__(self: Self, i: int) -> int:
        return self.w[i]


def weighted_degree(m: Monomial, w: Weights | Sequence[int]) -> int:
    ws = w.w if isinstance(w, Weights) else w
    if len(ws) != len(m):
        raise ValueError(f"monomial {m!r} and weights {ws!r} have different lengths")
    return sum(e * x for e, x in zip(m, ws, strict=True))


def weighted_degrees(p: Polynomial, w: Weights) -> set[int]:
    return {weighted_degree(m, w) for m in p.terms}


def is_weighted_homogeneous(p: Polynomial, w: Weights) -> bool:
    return len(weighted_degrees(p, w)) <= 1


# >>> Orders

OrderKey: TypeAlias = tuple[int | tuple[int, ...], ...]


class MonomialOrder(Protocol):
    nvars: int

    def key(self: Self, m: Monomial) -> OrderKey:
        """Sort key: `a` is larger than `b` iff `key(a) > key(b)`."""
        ...

    def is_local(self: Self) -> bool: ...


@dataclass(frozen=True)
class LocalWeighted:
    """Local weighted degree order.

    Lower weighted degree is larger, so 1 is the maximal monomial. Ties are
    broken reverse-lexicographically: the monomial with the larger exponent in
    the last differing position is smaller.
    """

    weights: Weights

    @property
    def nvars(self: Self) -> int:
        return len(self.weights)

    def key(self: Self, m: Monomial) -> OrderKey:
        return (-weighted_degree(m, self.weights), tuple(-e for e in reversed(m)))

    def is_local(self: Self) -> bool:
        return True


@dataclass(frozen=True)
class MixedElimination:
    """Block order with a global block compared first by total degree.

    Monomials with a higher degree in the global block are larger; ties fall
    through to `local` on the remaining variables, then to the exponents of
    the global block.
    """

    global_block: frozenset[int]
    local: LocalWeighted

    def __post_init__(self: Self) -> None:
        if any(not 0 <= i < self.nvars for i in self.global_block):
            raise ValueError("global block refers to variables outside the ring")

    @property
    def nvars(self: Self) -> int:
        return len(self.global_block) + self.local.nvars

    @property
    def rest(self: Self) -> tuple[int, ...]:
        return tuple(i for i in range(self.nvars) if i not in self.global_block)

    def key(self: Self, m: Monomial) -> OrderKey:
        block = tuple(m[i] for i in sorted(self.global_block))
        rest = tuple(m[i] for i in self.rest)
        return (sum(block), *self.local.key(rest), block)

    def is_local(self: Self) -> bool:
        return False


def local_degree_order(n: int) -> LocalWeighted:
    return LocalWeighted(Weights.uniform(n))


def elimination_order(local: LocalWeighted) -> MixedElimination:
    """Order on the ring extended by one trailing variable, eliminated first."""
    return MixedElimination(frozenset({local.nvars}), local)


# >>> Leading terms


def leading_monomial(p: Polynomial, ord: MonomialOrder) -> Monomial:
    if p.is_zero():
        raise ZeroPolynomialError
    return max(p.terms, key=ord.key)


def leading_term(p: Polynomial, ord: MonomialOrder) -> Term:
    m = leading_monomial(p, ord)
    return m, p.terms[m]


def leading_coefficient(p: Polynomial, ord: MonomialOrder) -> Fraction:
    return leading_term(p, ord)[1]


def sorted_terms(p: Polynomial, ord: MonomialOrder) -> list[Term]:
    """Terms in decreasing order."""
    return sorted(p.items(), key=lambda t: ord.key(t[0]), reverse=True)


def ecart(p: Polynomial, ord: MonomialOrder) -> int:
    return p.degree() - sum(leading_monomial(p, ord))
