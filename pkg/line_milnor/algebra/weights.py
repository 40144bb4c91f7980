from collections.abc import Sequence
from functools import reduce
from math import gcd, lcm
from typing import Self

import sympy

from ..errors import PreconditionError
from .order import Weights
from .poly import Polynomial

# >>> Error classes


class NoWeights(PreconditionError):
    def __init__(self: Self, data: str) -> None:
        super().__init__(f"no positive weights make the equations homogeneous: {data}")


class AmbiguousWeights(PreconditionError):
    def __init__(self: Self, dim: int) -> None:
        super().__init__(
            f"weights are not determined by the equations (solution space of"
            f" dimension {dim}); supply them explicitly"
        )
        self.dim = dim


def infer_weights(hs: Sequence[Polynomial]) -> Weights:
    """Smallest positive integer weights making every `h` weighted homogeneous.

    Each pair of monomials of one equation contributes the linear condition
    `<m_1 - m_2, w> = 0`; the weights are the primitive generator of the
    solution line.
    """
    if len(hs) == 0:
        raise ValueError("need at least one equation")

    n = hs[0].ring.nvars

    rows: list[list[int]] = []
    for h in hs:
        if h.is_zero():
            raise ValueError("equations must be nonzero")

        monos = list(h.terms)
        first = monos[0]
        rows.extend([a - b for a, b in zip(m, first, strict=True)] for m in monos[1:])

    if len(rows) == 0:
        raise AmbiguousWeights(n)

    kernel = sympy.Matrix(rows).nullspace()
    if len(kernel) == 0:
        raise NoWeights("the homogeneity system has only the trivial solution")
    if len(kernel) > 1:
        raise AmbiguousWeights(len(kernel))

    vec = [sympy.Rational(x) for x in kernel[0]]
    den = reduce(lcm, (int(x.q) for x in vec), 1)
    ints = [int(x * den) for x in vec]

    g = reduce(gcd, (abs(x) for x in ints), 0)
    ints = [x // g for x in ints]

    if all(x < 0 for x in ints):
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise NoWeights(f"the only solutions have non-positive entries: {ints!r}")

    return Weights(tuple(ints))
