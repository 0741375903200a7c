from itertools import groupby
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

Law = Literal[
    "independent",
    "conditional",
    "reinforcing",
    "antagonistic",
    "evaluate-oracle",
]


class SemanticsReport(BaseModel):
    """
        Outcome of checking one semantic law on one generated case.

    A violated report always carries a witness: an activation set for
    prevention-side laws or a consequence choice for the antagonistic law.
    Witness collections are stored sorted so report lines are byte-stable.
    """

    case: int = Field(..., ge=0)
    tree_id: str
    law: Law
    status: Literal["holds", "violated"]
    witness_active: list[str] | None = None
    witness_choice: dict[int, int] | None = None
    detail: str | None = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_witness(self) -> "SemanticsReport":
        if self.status == "violated" and self.witness_active is None and self.witness_choice is None:
            raise ValueError("a violated report needs a witness")
        return self

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def to_line(self) -> str:
        return self.model_dump_json(exclude_none=True)


class CaseReport(BaseModel):
    """
        Every law checked on one generated case; one line of the report file.

    `laws` maps each law to its status in check order. `violations` keeps the
    full records, witnesses included, of the laws that failed.
    """

    case: int = Field(..., ge=0)
    tree_id: str
    status: Literal["holds", "violated"]
    laws: dict[Law, Literal["holds", "violated"]]
    violations: list[SemanticsReport] | None = None

    model_config = ConfigDict(frozen=True)

    @classmethod
    def of(cls, reports: list[SemanticsReport]) -> "CaseReport":
        failed = [r for r in reports if not r.holds]
        return cls(
            case=reports[0].case,
            tree_id=reports[0].tree_id,
            status="violated" if failed else "holds",
            laws={r.law: r.status for r in reports},
            violations=failed or None,
        )

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def to_line(self) -> str:
        return self.model_dump_json(exclude_none=True)


def case_reports(reports: list[SemanticsReport]) -> list[CaseReport]:
    """Group law records by case, keeping case order."""
    return [CaseReport.of(list(group)) for _, group in groupby(reports, key=lambda r: r.case)]


def report_lines(reports: list[SemanticsReport]) -> str:
    """Line-delimited JSON, one record per case, newline terminated."""
    return "".join(f"{c.to_line()}\n" for c in case_reports(reports))
