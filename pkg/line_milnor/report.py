from dataclasses import dataclass
from typing import Any, Literal, TypeAlias

import orjson
from latch_data_validation.data_validation import DataValidationError, validate

from .errors import BadInputError

Verdict: TypeAlias = Literal["holds", "fails", "inapplicable"]


class ReportSchemaError(BadInputError):
    def __init__(self: "ReportSchemaError", e: DataValidationError | str) -> None:
        super().__init__(e if isinstance(e, str) else e.json())


@dataclass(frozen=True)
class SeriesRow:
    k: int
    mu: int | None
    """`None` when `f_k` is not isolated at this k."""
    predicted: int
    consistent: bool
    isolated: bool


@dataclass(frozen=True)
class EkSample:
    k: int
    e_k: int | None


@dataclass(frozen=True)
class Q44Verdict:
    verdict: Verdict
    nu: int | None = None
    rhs: int | None = None
    """`2*lambda + delta - 1`"""
    reason: str | None = None

    def describe(self: "Q44Verdict") -> str:
        if self.verdict == "inapplicable":
            return f"inapplicable ({self.reason})"
        return f"{self.verdict} (nu={self.nu}, 2*lambda+delta-1={self.rhs})"


@dataclass(frozen=True)
class InvariantReport:
    variables: list[str]
    f: str
    dim_x: int
    primitive_member: bool
    constancy: bool
    jacobian_number: int
    nu: int
    chi: int
    torsion_number: int | None
    delta: int | None
    q44: Q44Verdict
    sigma: int
    mult: int
    series: list[SeriesRow]
    e_k: list[EkSample]
    x_milnor: int | None = None


def emit_report(report: InvariantReport) -> bytes:
    return orjson.dumps(report, option=orjson.OPT_INDENT_2)


def parse_report(data: bytes | str) -> InvariantReport:
    try:
        raw: Any = orjson.loads(data)
    except orjson.JSONDecodeError as e:
        raise ReportSchemaError(f"report is not valid JSON: {e}") from e

    try:
        return validate(raw, InvariantReport)
    except DataValidationError as e:
        raise ReportSchemaError(e) from e
