from typing import Literal

from pydantic import BaseModel, Field

from schemas.document import ModelDocument


class ModelSummary(BaseModel):
    """
        Schema for the response body of a successful model validation.
    """
    kind: str = Field(..., description="dpt, dct or bowtie.")
    nodes: int = Field(..., description="Node count (both sides for a bowtie).")
    leaves: list[str] = Field(..., description="Leaf labels in canonical order.")
    root: str = Field(..., description="Label of the (prevention-side) root.")
    top_event: str | None = None


class EvaluateRequest(BaseModel):
    model: ModelDocument
    active: list[str] = Field(default_factory=list, description="Leaf labels that occurred.")


class EvaluateResponse(BaseModel):
    value: bool

    model_config = {
        "json_schema_extra": {"example": {"value": True}}
    }


class TruthTableRow(BaseModel):
    active: list[str]
    value: bool


class TruthTableResponse(BaseModel):
    leaves: list[str]
    rows: list[TruthTableRow]


class OutcomeRecord(BaseModel):
    choice: dict[int, int]
    outcome: str
    path: list[str]


class OutcomesResponse(BaseModel):
    outcomes: list[OutcomeRecord]
    reachable: list[str]


class DotRequest(BaseModel):
    model: ModelDocument
    unicode: bool = False


class DotResponse(BaseModel):
    dot: str


class ParseRequest(BaseModel):
    """
        Schema for the request body when compiling DSL source into a model.
    """
    source: str = Field(..., min_length=1, description="Model source in the term language.")
    kind: Literal["dpt", "dct"] = "dpt"


# --- Joins ---
class IndependentJoinRequest(BaseModel):
    left: ModelDocument
    right: ModelDocument


class ConditionalJoinRequest(BaseModel):
    host: ModelDocument
    guest: ModelDocument
    target_leaf: str = Field(..., min_length=1)


class ReinforcingJoinRequest(BaseModel):
    source: ModelDocument = Field(..., description="Bowtie whose response branch reinforces.")
    target: ModelDocument
    inhibit: int = Field(..., ge=0, description="NodeId of the reinforced INHIBIT gate.")
    choice: dict[int, int] = Field(..., description="CHOOSE node id -> 1-based branch.")


class AntagonisticJoinRequest(BaseModel):
    safety: ModelDocument
    security: ModelDocument
    event: str = Field(..., min_length=1)


class JoinResponse(BaseModel):
    model: ModelDocument
    merged_labels: list[str] = Field(default_factory=list)
    pruned_labels: list[str] = Field(default_factory=list)
    branch: list[str] | None = None
