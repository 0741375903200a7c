from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from models.consequence import ConsequenceTree
from models.prevention import PreventionTree

JoinKind = Literal["independent", "conditional", "reinforcing", "antagonistic"]


class Bowtie(BaseModel):
    """
        A prevention tree and a consequence tree linked by a top event.

    The prevention root realises the top event; the consequence tree
    describes what can follow once it has been realised.
    """

    prevention: PreventionTree
    consequence: ConsequenceTree
    top_event: str = Field(..., min_length=1)

    model_config = ConfigDict(frozen=True)


class ReinforcingBranch(BaseModel):
    """
        Event labels on one root-to-outcome path of a consequence tree.
    """

    path: tuple[str, ...] = Field(..., min_length=1)

    model_config = ConfigDict(frozen=True)

    def events(self) -> list[str]:
        """Path labels with repeats removed, first occurrence kept."""
        return list(dict.fromkeys(self.path))


class JoinReport(BaseModel):
    """
        What a join did besides building the result tree.
    """

    kind: JoinKind
    merged_labels: list[str] = Field(default_factory=list)
    pruned_labels: list[str] = Field(default_factory=list)
    branch: ReinforcingBranch | None = None


def make_bowtie(p: PreventionTree, c: ConsequenceTree, top_event: str) -> Bowtie:
    return Bowtie(prevention=p, consequence=c, top_event=top_event)
