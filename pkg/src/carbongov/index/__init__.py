from .embedder import (
    DEFAULT_DIM,
    Embedder,
    EmbeddingVector,
    ReferenceEmbedder,
    RemoteEmbedder,
    fnv1a_64,
)
from .cache import CachingEmbedder, VectorCache, cache_key
from .store import (
    EMPTY_FILTER,
    IndexEntry,
    MetadataFilter,
    RetrievalConfig,
    SearchHit,
    VectorIndex,
)

__all__ = [
    "CachingEmbedder",
    "DEFAULT_DIM",
    "EMPTY_FILTER",
    "Embedder",
    "EmbeddingVector",
    "IndexEntry",
    "MetadataFilter",
    "ReferenceEmbedder",
    "RemoteEmbedder",
    "RetrievalConfig",
    "SearchHit",
    "VectorCache",
    "VectorIndex",
    "cache_key",
    "fnv1a_64",
]
