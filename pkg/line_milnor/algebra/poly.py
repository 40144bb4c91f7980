from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Self, TypeAlias

Monomial: TypeAlias = tuple[int, ...]
Term: TypeAlias = tuple[Monomial, Fraction]
Scalar: TypeAlias = int | Fraction


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b, strict=True))


def monomial_quotient(a: Monomial, b: Monomial) -> Monomial:
    """`a / b`, assuming `b` divides `a`."""
    return tuple(x - y for x, y in zip(a, b, strict=True))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b, strict=True))


def monomial_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b, strict=True))


def monomial_degree(m: Monomial) -> int:
    return sum(m)


@dataclass(frozen=True)
class Ring:
    """Variable list of a polynomial ring over the rationals.

    Variable 0 is always the coordinate along the line.
    """

    names: tuple[str, ...]

    def __post_init__(self: Self) -> None:
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names: {self.names!r}")

    @property
    def nvars(self: Self) -> int:
        return len(self.names)

    @property
    def one_monomial(self: Self) -> Monomial:
        return (0,) * self.nvars

    def index(self: Self, name: str) -> int:
        return self.names.index(name)

    def extend(self: Self, name: str) -> "Ring":
        return Ring((*self.names, name))

    def zero(self: Self) -> "Polynomial":
        return Polynomial(self, {})

    def constant(self: Self, c: Scalar) -> "Polynomial":
        return Polynomial(self, {self.one_monomial: c})

    def monomial(self: Self, m: Monomial, c: Scalar = 1) -> "Polynomial":
        return Polynomial(self, {m: c})

    def var(self: Self, i: int) -> "Polynomial":
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self, {tuple(m): 1})

    def gens(self: Self) -> tuple["Polynomial", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def monomials_of_degree(self: Self, d: int) -> Iterator[Monomial]:
        def rec(i: int, left: int) -> Iterator[list[int]]:
            if i == self.nvars - 1:
                yield [left]
                return

            for e in range(left, -1, -1):
                for rest in rec(i + 1, left - e):
                    yield [e, *rest]

        if self.nvars == 0:
            if d == 0:
                yield ()
            return

        for m in rec(0, d):
            yield tuple(m)


class Polynomial:
    """Sparse polynomial with exact rational coefficients.

    Values are immutable: every operation returns a new polynomial and the
    term map never stores a zero coefficient.
    """

    __slots__ = ("_hash", "_terms", "ring")

    def __init__(self: Self, ring: Ring, terms: Mapping[Monomial, Scalar]) -> None:
        self.ring = ring

        res: dict[Monomial, Fraction] = {}
        for m, c in terms.items():
            if len(m) != ring.nvars:
                raise ValueError(
                    f"monomial {m!r} has {len(m)} exponents, ring has"
                    f" {ring.nvars} variables"
                )
            if c == 0:
                continue
            res[m] = Fraction(c)

        self._terms = res
        self._hash: int | None = None

    @classmethod
    def _trusted(cls: type[Self], ring: Ring, terms: dict[Monomial, Fraction]) -> Self:
        res = cls.__new__(cls)
        res.ring = ring
        res._terms = terms
        res._hash = None
        return res

    @property
    def terms(self: Self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def items(self: Self) -> Iterable[Term]:
        return self._terms.items()

    def coefficient(self: Self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def __len__(self: Self) -> int:
        return len(self._terms)

    def __bool__(self: Self) -> bool:
        return len(self._terms) > 0

    def is_zero(self: Self) -> bool:
        return len(self._terms) == 0

    def is_constant(self: Self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    def constant_term(self: Self) -> Fraction:
        return self.coefficient(self.ring.one_monomial)

    # >>> Arithmetic

    def _coerce(self: Self, other: "Polynomial | Scalar") -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(
                    f"ring mismatch: {self.ring.names!r} vs {other.ring.names!r}"
                )
            return other

        return self.ring.constant(other)

    def __add__(self: Self, other: "Polynomial | Scalar") -> "Polynomial":
        other = self._coerce(other)

        res = dict(self._terms)
        for m, c in other._terms.items():
            s = res.get(m, 0) + c
            if s == 0:
                res.pop(m, None)
            else:
                res[m] = s

        return Polynomial._trusted(self.ring, res)

    __radd__ = __add__

    def __neg__(self: Self) -> "Polynomial":
        return Polynomial._trusted(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self: Self, other: "Polynomial | Scalar") -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self: Self, other: "Polynomial | Scalar") -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self: Self, other: "Polynomial | Scalar") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)

        other = self._coerce(other)

        res: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = monomial_mul(m1, m2)
                s = res.get(m, 0) + c1 * c2
                if s == 0:
                    res.pop(m, None)
                else:
                    res[m] = s

        return Polynomial._trusted(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self: Self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative exponent")

        res = self.ring.constant(1)
        base = self
        while e > 0:
            if e & 1:
                res = res * base
            base = base * base
            e >>= 1
        return res

    def scale(self: Self, c: Scalar) -> "Polynomial":
        if c == 0:
            return self.ring.zero()
        c = Fraction(c)
        return Polynomial._trusted(self.ring, {m: c * x for m, x in self._terms.items()})

    def mul_term(self: Self, m: Monomial, c: Scalar) -> "Polynomial":
        if c == 0:
            return self.ring.zero()
        c = Fraction(c)
        return Polynomial._trusted(
            self.ring, {monomial_mul(m, k): c * x for k, x in self._terms.items()}
        )

    def __eq__(self: Self, other: object) -> bool:
        if isinstance(other, int | Fraction):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self: Self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # >>> Calculus and restriction

    def diff(self: Self, i: int) -> "Polynomial":
        res: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            e = m[i]
            if e == 0:
                continue
            dm = list(m)
            dm[i] = e - 1
            res[tuple(dm)] = c * e
        return Polynomial._trusted(self.ring, res)

    def restrict(self: Self, keep: Iterable[int]) -> "Polynomial":
        """Set every variable outside `keep` to zero."""
        keep = set(keep)
        return Polynomial._trusted(
            self.ring,
            {
                m: c
                for m, c in self._terms.items()
                if all(e == 0 for i, e in enumerate(m) if i not in keep)
            },
        )

    def restrict_to_axis(self: Self) -> "Polynomial":
        """Restriction to the line: every variable except variable 0 set to zero."""
        return self.restrict([0])

    def degree(self: Self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def order(self: Self) -> int:
        """Lowest total degree of a term (the m-adic order)."""
        if not self._terms:
            return -1
        return min(sum(m) for m in self._terms)

    def degree_in(self: Self, indices: Iterable[int]) -> int:
        idx = list(indices)
        if not self._terms:
            return -1
        return max(sum(m[i] for i in idx) for m in self._terms)

    def truncate(self: Self, n: int, weights: Sequence[int] | None = None) -> "Polynomial":
        """Drop every term of degree `>= n`, weighted by `weights` if given."""
        if weights is None:
            return Polynomial._trusted(
                self.ring, {m: c for m, c in self._terms.items() if sum(m) < n}
            )

        return Polynomial._trusted(
            self.ring,
            {
                m: c
                for m, c in self._terms.items()
                if sum(e * w for e, w in zip(m, weights, strict=True)) < n
            },
        )

    # >>> Ring changes

    def extend(self: Self, ring: Ring) -> "Polynomial":
        """Embed into `ring`, which appends variables to this ring."""
        pad = (0,) * (ring.nvars - self.ring.nvars)
        return Polynomial._trusted(ring, {(*m, *pad): c for m, c in self._terms.items()})

    def contract(self: Self, ring: Ring) -> "Polynomial":
        """Inverse of `extend`; the dropped variables must not occur."""
        n = ring.nvars
        res: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            if any(m[n:]):
                raise ValueError(f"{self} involves variables outside {ring.names!r}")
            res[m[:n]] = c
        return Polynomial._trusted(ring, res)

    # >>> Division

    def exact_div(self: Self, d: "Polynomial") -> "Polynomial | None":
        """`self / d` when `d` divides `self` in the polynomial ring, else None."""
        d = self._coerce(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")

        lm_d = max(d._terms)
        lc_d = d._terms[lm_d]

        q: dict[Monomial, Fraction] = {}
        r = self
        while r:
            lm_r = max(r._terms)
            if not monomial_divides(lm_d, lm_r):
                return None

            m = monomial_quotient(lm_r, lm_d)
            c = r._terms[lm_r] / lc_d
            q[m] = c
            r = r - d.mul_term(m, c)

        return Polynomial._trusted(self.ring, q)

    def content_monomial(self: Self) -> Monomial:
        """Greatest common monomial divisor of the terms."""
        if not self._terms:
            return self.ring.one_monomial
        it = iter(self._terms)
        res = list(next(it))
        for m in it:
            res = [min(a, b) for a, b in zip(res, m, strict=True)]
        return tuple(res)

    # >>> Printing

    def __str__(self: Self) -> str:
        from .parse import format_poly

        return format_poly(self)

    def __repr__(self: Self) -> str:
        return f"Polynomial({self.ring.names!r}, {self!s})"
