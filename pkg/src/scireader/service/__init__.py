"""HTTP service: document records, pipeline, search, translation, Q&A."""

from .app import create_app
from .config import ServiceConfig
from .errors import ApiError
from .storage import DocRecord, DocStore, doc_id_for

__all__ = [
    "create_app",
    "ServiceConfig",
    "ApiError",
    "DocRecord",
    "DocStore",
    "doc_id_for",
]
