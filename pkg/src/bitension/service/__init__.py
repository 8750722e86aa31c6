"""HTTP service layer: pydantic models, handlers, FastAPI app.

Run with ``uvicorn bitension.service:app``.
"""

from .app import app

__all__ = ["app"]
