from fastapi import APIRouter

from api.v1.endpoints import joins, language, trees

# --- Create the main v1 API router ---
api_router = APIRouter()

# --- Include all endpoint routers ----
api_router.include_router(trees.router)
api_router.include_router(language.router)
api_router.include_router(joins.router)
