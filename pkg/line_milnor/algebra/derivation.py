from collections.abc import Sequence
from dataclasses import dataclass
from typing import Self

from .order import Weights
from .parse import format_poly
from .poly import Polynomial, Ring, Scalar


@dataclass(frozen=True)
class Derivation:
    """Vector field `sum_j components[j] * d/dz_j`."""

    components: tuple[Polynomial, ...]

    def __post_init__(self: Self) -> None:
        if len(self.components) == 0:
            raise ValueError("a derivation needs at least one component")

        ring = self.components[0].ring
        if len(self.components) != ring.nvars:
            raise ValueError(
                f"derivation has {len(self.components)} components, ring has"
                f" {ring.nvars} variables"
            )
        if any(c.ring != ring for c in self.components):
            raise ValueError("derivation components live in different rings")

    @classmethod
    def from_components(cls: type[Self], components: Sequence[Polynomial]) -> Self:
        return cls(tuple(components))

    @classmethod
    def euler(cls: type[Self], ring: Ring, weights: Weights) -> Self:
        """`sum_j w_j z_j d/dz_j`."""
        return cls(tuple(ring.var(j).scale(w) for j, w in enumerate(weights.w)))

    @classmethod
    def partial(cls: type[Self], ring: Ring, i: int) -> Self:
        return cls(
            tuple(
                ring.constant(1) if j == i else ring.zero() for j in range(ring.nvars)
            )
        )

    @property
    def ring(self: Self) -> Ring:
        return self.components[0].ring

    def __call__(self: Self, f: Polynomial) -> Polynomial:
        return apply_derivation(self, f)

    def __add__(self: Self, other: "Derivation") -> "Derivation":
        return Derivation(
            tuple(a + b for a, b in zip(self.components, other.components, strict=True))
        )

    def __sub__(self: Self, other: "Derivation") -> "Derivation":
        return Derivation(
            tuple(a - b for a, b in zip(self.components, other.components, strict=True))
        )

    def times(self: Self, c: Polynomial | Scalar) -> "Derivation":
        return Derivation(tuple(x * c for x in self.components))

    def __str__(self: Self) -> str:
        parts = [
            f"({format_poly(c)})*d/d{name}"
            for c, name in zip(self.components, self.ring.names, strict=True)
            if not c.is_zero()
        ]
        if len(parts) == 0:
            return "0"
        return " + ".join(parts)


def apply_derivation(xi: Derivation, f: Polynomial) -> Polynomial:
    if xi.ring != f.ring:
        raise ValueError(
            f"ring mismatch: {xi.ring.names!r} vs {f.ring.names!r}"
        )

    res = f.ring.zero()
    for j, c in enumerate(xi.components):
        if c.is_zero():
            continue
        res = res + c * f.diff(j)
    return res
