"""
    API v1 endpoints.
"""
from api.v1.endpoints import joins, language, trees
