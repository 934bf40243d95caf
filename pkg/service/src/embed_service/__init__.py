"""HTTP sentence-embedding service for the citation-based summarizer."""

from .app import create_app
from .encoders import (
    DEFAULT_MODEL_NAME,
    HashingEncoder,
    MeanPoolingTransformerEncoder,
    create_encoder,
)
from .export import export_embeddings, read_sentences

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MODEL_NAME",
    "HashingEncoder",
    "MeanPoolingTransformerEncoder",
    "create_app",
    "create_encoder",
    "export_embeddings",
    "read_sentences",
]
