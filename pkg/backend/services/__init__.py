from core.config import get_settings
from .service_base import ServiceBase
from .prevention_service import PreventionService
from .consequence_service import ConsequenceService
from .join_service import JoinService
from .analysis_service import AnalysisService
from .model_service import ModelService
from .render_service import RenderService

# --- Lazy initialization to avoid loading settings at import time ---
_prevention_service = None
_consequence_service = None
_join_service = None
_analysis_service = None
_model_service = None
_render_service = None


def get_prevention_service() -> PreventionService:
    """
        Get or create prevention service instance.
    """
    global _prevention_service
    if _prevention_service is None:
        _prevention_service = PreventionService(get_settings())
    return _prevention_service


def get_consequence_service() -> ConsequenceService:
    global _consequence_service
    if _consequence_service is None:
        _consequence_service = ConsequenceService(get_settings())
    return _consequence_service


def get_join_service() -> JoinService:
    global _join_service
    if _join_service is None:
        _join_service = JoinService(get_settings())
    return _join_service


def get_analysis_service() -> AnalysisService:
    global _analysis_service
    if _analysis_service is None:
        _analysis_service = AnalysisService(get_settings())
    return _analysis_service


def get_model_service() -> ModelService:
    global _model_service
    if _model_service is None:
        _model_service = ModelService(get_settings())
    return _model_service


def get_render_service() -> RenderService:
    global _render_service
    if _render_service is None:
        _render_service = RenderService(get_settings())
    return _render_service


def reset_services() -> None:
    """Drop cached instances so the next getter call picks up fresh settings."""
    global _prevention_service, _consequence_service, _join_service
    global _analysis_service, _model_service, _render_service
    _prevention_service = _consequence_service = _join_service = None
    _analysis_service = _model_service = _render_service = None


__all__ = [
    "ServiceBase",
    "PreventionService",
    "ConsequenceService",
    "JoinService",
    "AnalysisService",
    "ModelService",
    "RenderService",
    "get_prevention_service",
    "get_consequence_service",
    "get_join_service",
    "get_analysis_service",
    "get_model_service",
    "get_render_service",
    "reset_services",
]
