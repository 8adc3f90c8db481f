"""Export pre-trained language model embeddings for log messages."""

from .export import (
    MODEL_REGISTRY,
    EncoderBackend,
    ExportJob,
    ModelSpec,
    export_embeddings,
)

__all__ = [
    "MODEL_REGISTRY",
    "EncoderBackend",
    "ExportJob",
    "ModelSpec",
    "export_embeddings",
]
