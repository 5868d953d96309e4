"""Persistent text-to-vector cache.

Keyed by a digest of (embedder id, dimension, whitespace-normalized text),
so the same text embedded by a nondeterministic remote backend always maps
to one stored vector: retrieval stays repeatable across calls and process
restarts. Corrupt entries are treated as misses with a warning.
"""
from __future__ import annotations

import hashlib
import json
import logging
import re
import threading
from pathlib import Path

import numpy as np

from .embedder import Embedder, EmbeddingVector

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-6


def cache_key(embedder_id: str, dim: int, text: str) -> str:
    normalized = re.sub(r"\s+", " ", text).strip()
    payload = f"{embedder_id}\n{dim}\n{normalized}".encode("utf-8")
    return hashlib.sha256(payload).hexdigest()


class VectorCache:
    """Append-only JSONL cache; single-entry writes are atomic line appends."""

    def __init__(self, path: str | Path | None = None) -> None:
        self.path = Path(path) if path else None
        self._entries: dict[str, EmbeddingVector] = {}
        self._lock = threading.Lock()
        if self.path and self.path.exists():
            self._load()

    def _load(self) -> None:
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                    vec = self._validated(entry["key"], entry["dim"], entry["values"])
                except (ValueError, KeyError, TypeError) as exc:
                    logger.warning("vector cache %s line %d corrupt, skipping: %s",
                                   self.path, lineno, exc)
                    continue
                self._entries[entry["key"]] = vec

    @staticmethod
    def _validated(key: str, dim: int, values: list[float]) -> EmbeddingVector:
        arr = np.asarray(values, dtype=np.float64)
        if arr.shape != (dim,):
            raise ValueError(f"entry {key} has shape {arr.shape}, expected ({dim},)")
        norm = float(np.linalg.norm(arr))
        if norm != 0.0 and abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"entry {key} norm {norm} violates unit-or-zero invariant")
        return EmbeddingVector(values=arr, norm=norm)

    def lookup(self, key: str) -> EmbeddingVector | None:
        return self._entries.get(key)

    def store(self, key: str, vector: EmbeddingVector) -> None:
        with self._lock:
            self._entries[key] = vector
            if self.path:
                record = {"key": key, "dim": vector.dim, "values": vector.values.tolist()}
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(json.dumps(record) + "\n")
                    fh.flush()

    def __len__(self) -> int:
        return len(self._entries)


class CachingEmbedder:
    """Wraps any embedder with cache-first lookup."""

    def __init__(self, inner: Embedder, cache: VectorCache | None = None) -> None:
        self.inner = inner
        self.cache = cache if cache is not None else VectorCache()
        self.embedder_id = inner.embedder_id
        self.dim = inner.dim

    def embed(self, text: str) -> EmbeddingVector:
        key = cache_key(self.embedder_id, self.dim, text)
        hit = self.cache.lookup(key)
        if hit is not None:
            return hit
        vector = self.inner.embed(text)
        self.cache.store(key, vector)
        return vector
