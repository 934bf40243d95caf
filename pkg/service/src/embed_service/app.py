"""FastAPI application exposing the /embed protocol.

``POST /embed`` takes ``{"texts": [str]}`` and answers
``{"dim": int, "vectors": [[number]]}`` with vectors in request order.
Errors are non-200 with ``{"error": str}``: 400 for an empty list, an
oversize batch, or blank texts; 500 when the encoder fails.

One model instance serves everything; encoding is serialized through a
lock so concurrent clients are safe.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel


class EmbedRequest(BaseModel):
    texts: list[str]


def _error(status_code: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status_code, content={"error": message})


def create_app(encoder, max_batch: int = 64) -> FastAPI:
    app = FastAPI(title="cbjsumm embedding service")
    lock = threading.Lock()

    @app.get("/health")
    def health():
        return {"dim": encoder.dim, "model": encoder.model_name}

    @app.post("/embed")
    def embed(request: EmbedRequest):
        texts = request.texts
        if not texts:
            return _error(400, "texts must be non-empty")
        if len(texts) > max_batch:
            return _error(400, f"batch of {len(texts)} exceeds max_batch={max_batch}")
        for i, text in enumerate(texts):
            if not text.strip():
                return _error(400, f"texts[{i}] is empty after trimming")
        try:
            with lock:
                vectors = encoder.encode(texts)
        except Exception as exc:  # surface model failures as the wire error shape
            return _error(500, f"encoder failure: {exc}")
        return {"dim": encoder.dim, "vectors": vectors}

    return app
