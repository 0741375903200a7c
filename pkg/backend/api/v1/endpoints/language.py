from fastapi import APIRouter, Depends

from dependencies import get_model_service
from schemas.api import ParseRequest
from schemas.document import ModelDocument
from services.model_service import ModelService

router = APIRouter(prefix="/dsl", tags=["dsl"])


@router.post(
    "/parse",
    response_model=ModelDocument,
    response_model_exclude_none=True,
    summary="Compile term-language source into a model document",
)
def parse_source(
    request: ParseRequest,
    model_service: ModelService = Depends(get_model_service),
) -> ModelDocument:
    return ModelDocument.from_model(model_service.parse_model(request.source, request.kind))
