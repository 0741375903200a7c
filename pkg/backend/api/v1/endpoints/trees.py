import logging

from fastapi import APIRouter, Depends

from dependencies import (
    get_consequence_service,
    get_model_service,
    get_prevention_service,
    get_render_service,
)
from models.bowtie import Bowtie
from models.prevention import ActivationSet
from schemas.api import (
    DotRequest,
    DotResponse,
    EvaluateRequest,
    EvaluateResponse,
    ModelSummary,
    OutcomeRecord,
    OutcomesResponse,
    TruthTableResponse,
    TruthTableRow,
)
from schemas.document import ModelDocument
from services.consequence_service import ConsequenceService
from services.model_service import ModelService, consequence_of, prevention_of
from services.prevention_service import PreventionService
from services.render_service import RenderService

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/models", tags=["models"])


@router.post(
    "/validate",
    response_model=ModelSummary,
    summary="Validate a model document",
    description="Run the full structural validation and summarise the model.",
)
def validate_model(
    document: ModelDocument,
    model_service: ModelService = Depends(get_model_service),
) -> ModelSummary:
    model = model_service.from_document(document)
    if isinstance(model, Bowtie):
        tree = model.prevention.tree
        nodes = len(tree.nodes) + len(model.consequence.tree.nodes)
        top_event = model.top_event
    else:
        tree = model.tree
        nodes = len(tree.nodes)
        top_event = None
    return ModelSummary(
        kind=document.kind,
        nodes=nodes,
        leaves=tree.leaf_labels(),
        root=tree.label(tree.root),
        top_event=top_event,
    )


@router.post("/evaluate", response_model=EvaluateResponse, summary="Evaluate the structure function")
def evaluate_model(
    request: EvaluateRequest,
    model_service: ModelService = Depends(get_model_service),
    prevention_service: PreventionService = Depends(get_prevention_service),
) -> EvaluateResponse:
    tree = prevention_of(model_service.from_document(request.model))
    value = prevention_service.evaluate(tree, ActivationSet.of(request.active))
    return EvaluateResponse(value=value)


@router.post("/truth-table", response_model=TruthTableResponse, summary="Full truth table")
def truth_table(
    document: ModelDocument,
    model_service: ModelService = Depends(get_model_service),
    prevention_service: PreventionService = Depends(get_prevention_service),
) -> TruthTableResponse:
    tree = prevention_of(model_service.from_document(document))
    rows = [
        TruthTableRow(active=A.sorted(), value=value)
        for A, value in prevention_service.truth_rows(tree)
    ]
    return TruthTableResponse(leaves=tree.tree.leaf_labels(), rows=rows)


@router.post("/outcomes", response_model=OutcomesResponse, summary="Enumerate consequence outcomes")
def outcomes(
    document: ModelDocument,
    model_service: ModelService = Depends(get_model_service),
    consequence_service: ConsequenceService = Depends(get_consequence_service),
) -> OutcomesResponse:
    dct = consequence_of(model_service.from_document(document))
    tree = dct.tree
    records = [
        OutcomeRecord(
            choice=dict(o.choice.items()),
            outcome=tree.label(o.outcome),
            path=[tree.label(i) for i in o.path],
        )
        for o in consequence_service.enumerate_outcomes(dct)
    ]
    reachable = [tree.label(i) for i in consequence_service.reachable_outcomes(dct)]
    return OutcomesResponse(outcomes=records, reachable=reachable)


@router.post("/dot", response_model=DotResponse, summary="Render as Graphviz DOT")
def export_dot(
    request: DotRequest,
    model_service: ModelService = Depends(get_model_service),
    render_service: RenderService = Depends(get_render_service),
) -> DotResponse:
    model = model_service.from_document(request.model)
    return DotResponse(dot=render_service.export_dot(model, unicode=request.unicode))
