import logging

from fastapi import APIRouter, Depends

from dependencies import get_join_service, get_model_service
from models.consequence import ConsequenceChoice
from schemas.api import (
    AntagonisticJoinRequest,
    ConditionalJoinRequest,
    IndependentJoinRequest,
    JoinResponse,
    ReinforcingJoinRequest,
)
from schemas.document import ModelDocument
from services.join_service import JoinService
from services.model_service import ModelService, bowtie_of, consequence_of, prevention_of

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/joins", tags=["joins"])


@router.post("/independent", response_model=JoinResponse, response_model_exclude_none=True)
def independent(
    request: IndependentJoinRequest,
    model_service: ModelService = Depends(get_model_service),
    join_service: JoinService = Depends(get_join_service),
) -> JoinResponse:
    left = prevention_of(model_service.from_document(request.left))
    right = prevention_of(model_service.from_document(request.right))
    joined, report = join_service.independent_join_report(left, right)
    return JoinResponse(model=ModelDocument.from_model(joined), merged_labels=report.merged_labels)


@router.post("/conditional", response_model=JoinResponse, response_model_exclude_none=True)
def conditional(
    request: ConditionalJoinRequest,
    model_service: ModelService = Depends(get_model_service),
    join_service: JoinService = Depends(get_join_service),
) -> JoinResponse:
    host = prevention_of(model_service.from_document(request.host))
    guest = prevention_of(model_service.from_document(request.guest))
    joined, report = join_service.conditional_join_report(host, guest, request.target_leaf)
    return JoinResponse(model=ModelDocument.from_model(joined), merged_labels=report.merged_labels)


@router.post("/reinforcing", response_model=JoinResponse, response_model_exclude_none=True)
def reinforcing(
    request: ReinforcingJoinRequest,
    model_service: ModelService = Depends(get_model_service),
    join_service: JoinService = Depends(get_join_service),
) -> JoinResponse:
    source = bowtie_of(model_service.from_document(request.source))
    target = prevention_of(model_service.from_document(request.target))
    joined, report = join_service.reinforcing_join_report(
        source, target, request.inhibit, ConsequenceChoice(choice=request.choice)
    )
    return JoinResponse(
        model=ModelDocument.from_model(joined),
        pruned_labels=report.pruned_labels,
        branch=list(report.branch.path),
    )


@router.post("/antagonistic", response_model=JoinResponse, response_model_exclude_none=True)
def antagonistic(
    request: AntagonisticJoinRequest,
    model_service: ModelService = Depends(get_model_service),
    join_service: JoinService = Depends(get_join_service),
) -> JoinResponse:
    safety = consequence_of(model_service.from_document(request.safety))
    security = consequence_of(model_service.from_document(request.security))
    joined = join_service.antagonistic_join(safety, security, request.event)
    return JoinResponse(model=ModelDocument.from_model(joined))
