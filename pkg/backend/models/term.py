"""
    Term AST of the textual model language.
"""
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field


class Leaf(BaseModel):
    node: Literal["leaf"] = "leaf"
    label: str = Field(..., min_length=1)

    model_config = ConfigDict(frozen=True)


class And(BaseModel):
    node: Literal["and"] = "and"
    operands: tuple["Term", ...] = Field(..., min_length=1)

    model_config = ConfigDict(frozen=True)


class Or(BaseModel):
    node: Literal["or"] = "or"
    operands: tuple["Term", ...] = Field(..., min_length=1)

    model_config = ConfigDict(frozen=True)


class Inhibit(BaseModel):
    """`cause` occurs and `prevention` does not."""

    node: Literal["inhibit"] = "inhibit"
    cause: "Term"
    prevention: "Term"

    model_config = ConfigDict(frozen=True)


class Branch(BaseModel):
    tag: str = Field(..., min_length=1)
    term: "Term"

    model_config = ConfigDict(frozen=True)


class Choose(BaseModel):
    """Event-tree branch point; `label` names the branching event."""

    node: Literal["choose"] = "choose"
    label: str | None = None
    branches: tuple[Branch, ...] = Field(..., min_length=2)

    model_config = ConfigDict(frozen=True)


Term = Annotated[Union[Leaf, And, Or, Inhibit, Choose], Field(discriminator="node")]

for _model in (And, Or, Inhibit, Branch, Choose):
    _model.model_rebuild()
