"""
    API v1: model, language and join routers.
"""
from api.v1.routes import api_router

__all__ = ["api_router"]
