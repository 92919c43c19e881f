"""Reference embedding provider speaking the toolkit's wire protocol."""

from .app import ServiceConfig, create_app
from .hashing import hash_embeddings

__version__ = "0.1.0"

__all__ = ["ServiceConfig", "create_app", "hash_embeddings"]
