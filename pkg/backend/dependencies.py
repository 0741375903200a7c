"""
    FastAPI dependency providers: one service instance per request, built
    from the injected settings.
"""
from fastapi import Depends

from core.config import Settings, get_settings
from services import (
    ConsequenceService,
    JoinService,
    ModelService,
    PreventionService,
    RenderService,
)


def get_prevention_service(settings: Settings = Depends(get_settings)) -> PreventionService:
    return PreventionService(settings)


def get_consequence_service(settings: Settings = Depends(get_settings)) -> ConsequenceService:
    return ConsequenceService(settings)


def get_join_service(settings: Settings = Depends(get_settings)) -> JoinService:
    return JoinService(settings)


def get_model_service(settings: Settings = Depends(get_settings)) -> ModelService:
    return ModelService(settings)


def get_render_service(settings: Settings = Depends(get_settings)) -> RenderService:
    return RenderService(settings)
