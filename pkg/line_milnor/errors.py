from enum import Enum
from typing import Any, Self


class ExitStatus(int, Enum):
    """Process exit codes of the command-line tool."""

    ok = 0
    """
    0 indicates that every requested quantity was computed.
    """

    mismatch = 1
    """
    1 indicates that two independent computations of the same quantity
    disagree, which points at a bug rather than at the input.
    """

    precondition = 2
    """
    2 indicates that the input violates a hypothesis of the formulas: f is
    not in the primitive ideal, the coordinates are not aligned, f is not in
    the square of the line ideal, the weights are ambiguous, ...
    """

    not_finite = 3
    """
    3 indicates that a requested invariant is the dimension of an infinite
    dimensional quotient.
    """

    bad_input = 4
    """
    4 indicates that the problem file could not be parsed or does not match
    the schema.
    """

    no_stabilization = 5
    """
    5 indicates that a stabilization schedule or an iteration budget was
    exhausted before an answer was certified.
    """


class KernelError(RuntimeError):
    def __init__(self: Self, status: ExitStatus, data: Any) -> None:
        super().__init__(data)

        self.status = status
        self.data = data


class PreconditionError(KernelError):
    def __init__(self: Self, data: Any) -> None:
        super().__init__(ExitStatus.precondition, data)


class NotFiniteError(KernelError):
    def __init__(self: Self, data: Any) -> None:
        super().__init__(ExitStatus.not_finite, data)


class BadInputError(KernelError):
    def __init__(self: Self, data: Any) -> None:
        super().__init__(ExitStatus.bad_input, data)


class StabilizationError(KernelError):
    def __init__(self: Self, data: Any) -> None:
        super().__init__(ExitStatus.no_stabilization, data)


class MismatchError(KernelError):
    def __init__(self: Self, data: Any) -> None:
        super().__init__(ExitStatus.mismatch, data)
