"""Text embedding backends.

ReferenceEmbedder is the built-in deterministic backend: hashed word and
character-trigram counts, L2-normalized. It keeps the entire pipeline
runnable and testable offline. RemoteEmbedder speaks a minimal HTTP
contract and is interchangeable behind the same interface.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Protocol, Sequence

import httpx
import numpy as np

from ..errors import DimensionMismatch, RemoteUnavailable

DEFAULT_DIM = 256

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1

_TOKEN_RE = re.compile(r"\w+", re.UNICODE)


def fnv1a_64(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


@dataclass(frozen=True)
class EmbeddingVector:
    values: np.ndarray
    norm: float

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])

    @property
    def is_zero(self) -> bool:
        return self.norm == 0.0

    @classmethod
    def from_raw(cls, raw: Sequence[float] | np.ndarray) -> "EmbeddingVector":
        """Unit-normalize raw values; all-zero input becomes the empty-text sentinel."""
        arr = np.asarray(raw, dtype=np.float64)
        norm = float(np.linalg.norm(arr))
        if norm == 0.0:
            return cls(values=np.zeros_like(arr), norm=0.0)
        unit = arr / norm
        return cls(values=unit, norm=float(np.linalg.norm(unit)))


class Embedder(Protocol):
    embedder_id: str
    dim: int

    def embed(self, text: str) -> EmbeddingVector: ...


def _features(text: str) -> list[str]:
    lowered = text.lower()
    feats = [f"w:{tok}" for tok in _TOKEN_RE.findall(lowered)]
    squashed = re.sub(r"\s+", " ", lowered).strip()
    feats.extend(f"t:{squashed[i:i + 3]}" for i in range(len(squashed) - 2))
    return feats


class ReferenceEmbedder:
    """Deterministic hashing embedder: word + trigram counts into D buckets."""

    def __init__(self, dim: int = DEFAULT_DIM) -> None:
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim
        self.embedder_id = f"reference-fnv1a-{dim}"

    def embed(self, text: str) -> EmbeddingVector:
        counts = np.zeros(self.dim, dtype=np.float64)
        for feat in _features(text):
            counts[fnv1a_64(feat.encode("utf-8")) % self.dim] += 1.0
        return EmbeddingVector.from_raw(counts)


class RemoteEmbedder:
    """HTTP embedding backend: POST {endpoint}/embed {"texts": [...]} -> {"vectors": [[...]]}."""

    def __init__(
        self,
        endpoint: str,
        dim: int = DEFAULT_DIM,
        model: str | None = None,
        timeout: float = 10.0,
        client: httpx.Client | None = None,
    ) -> None:
        self.endpoint = endpoint.rstrip("/")
        self.dim = dim
        self.embedder_id = f"remote-{model or self.endpoint}-{dim}"
        self._client = client or httpx.Client(timeout=timeout)

    def embed(self, text: str) -> EmbeddingVector:
        vectors = self.embed_batch([text])
        return vectors[0]

    def embed_batch(self, texts: list[str]) -> list[EmbeddingVector]:
        try:
            resp = self._client.post(f"{self.endpoint}/embed", json={"texts": texts})
            resp.raise_for_status()
            payload = resp.json()
        except (httpx.HTTPError, ValueError) as exc:
            raise RemoteUnavailable(f"embedding endpoint {self.endpoint} failed: {exc}") from exc
        vectors = payload.get("vectors")
        if not isinstance(vectors, list) or len(vectors) != len(texts):
            raise RemoteUnavailable(f"embedding endpoint returned malformed payload")
        out = []
        for vec in vectors:
            if len(vec) != self.dim:
                raise DimensionMismatch(
                    f"remote returned dimension {len(vec)}, index expects {self.dim}"
                )
            out.append(EmbeddingVector.from_raw(vec))
        return out
