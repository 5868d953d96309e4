import json
import logging
import random

import httpx
import numpy as np
import pytest

from carbongov.errors import DimensionMismatch, RemoteUnavailable
from carbongov.index import (
    CachingEmbedder,
    EmbeddingVector,
    ReferenceEmbedder,
    RemoteEmbedder,
    RetrievalConfig,
    VectorCache,
    VectorIndex,
    cache_key,
)
from carbongov.index.store import IndexEntry
from carbongov.corpus import ChunkMetadata


class CountingEmbedder:
    """Wraps a reference embedder and counts actual embed calls."""

    def __init__(self, dim=64):
        self.inner = ReferenceEmbedder(dim=dim)
        self.calls = []

    @property
    def embedder_id(self):
        return self.inner.embedder_id

    @property
    def dim(self):
        return self.inner.dim

    def embed(self, text):
        self.calls.append(text)
        return self.inner.embed(text)


class JitteringEmbedder:
    """Deterministic direction, nondeterministic low-order noise per call.

    Simulates a remote service whose float payloads wobble between calls.
    """

    def __init__(self, dim=64, scale=1e-4):
        self.inner = ReferenceEmbedder(dim=dim)
        self.scale = scale
        self.calls = []
        self._rng = random.Random(99)

    @property
    def embedder_id(self):
        return "jitter-" + self.inner.embedder_id

    @property
    def dim(self):
        return self.inner.dim

    def embed(self, text):
        self.calls.append(text)
        base = self.inner.embed(text)
        if base.is_zero:
            return base
        noise = np.array([self._rng.uniform(-self.scale, self.scale) for _ in range(self.dim)])
        return EmbeddingVector.from_raw(base.values + noise)


def test_cache_key_normalizes_whitespace():
    a = cache_key("e", 64, "carbon   peaking\ttarget")
    b = cache_key("e", 64, "carbon peaking target")
    assert a == b


def test_cache_key_separates_embedders():
    assert cache_key("e1", 64, "text") != cache_key("e2", 64, "text")
    assert cache_key("e", 64, "text") != cache_key("e", 128, "text")


def test_memoization_one_call_per_distinct_text():
    counting = CountingEmbedder()
    cached = CachingEmbedder(counting, VectorCache())
    for _ in range(3):
        cached.embed("carbon")
        cached.embed("transport")
    assert sorted(counting.calls) == ["carbon", "transport"]


def test_cache_round_trip_bitwise():
    counting = CountingEmbedder()
    cached = CachingEmbedder(counting, VectorCache())
    first = cached.embed("industry emissions")
    second = cached.embed("industry emissions")
    assert np.array_equal(first.values, second.values)
    assert first.norm == second.norm


def test_persistent_cache_survives_reopen(tmp_path):
    path = tmp_path / "vectors.jsonl"
    counting1 = CountingEmbedder()
    CachingEmbedder(counting1, VectorCache(path)).embed("hello world")
    counting2 = CountingEmbedder()
    CachingEmbedder(counting2, VectorCache(path)).embed("hello world")
    assert counting1.calls == ["hello world"]
    assert counting2.calls == []


def test_different_embedder_id_misses(tmp_path):
    path = tmp_path / "vectors.jsonl"
    cache = VectorCache(path)
    a = CountingEmbedder(dim=64)
    CachingEmbedder(a, cache).embed("same text")

    class Renamed(CountingEmbedder):
        @property
        def embedder_id(self):
            return "other-model-64"

    b = Renamed(dim=64)
    CachingEmbedder(b, VectorCache(path)).embed("same text")
    assert b.calls == ["same text"]


def test_corrupt_cache_line_skipped(tmp_path, caplog):
    path = tmp_path / "vectors.jsonl"
    counting = CountingEmbedder()
    CachingEmbedder(counting, VectorCache(path)).embed("good entry")
    with path.open("a") as f:
        f.write("{not json at all\n")
        f.write(json.dumps({"key": "short"}) + "\n")
    with caplog.at_level(logging.WARNING):
        cache = VectorCache(path)
    assert any("cache" in r.message.lower() for r in caplog.records)
    fresh = CountingEmbedder()
    CachingEmbedder(fresh, cache).embed("good entry")
    assert fresh.calls == []


def test_jitter_stability_through_cache():
    """With a shared cache the same text embeds once, so jitter cannot
    perturb rankings between runs."""
    jitter = JitteringEmbedder()
    cache = VectorCache()
    idx = VectorIndex(jitter, cache=cache)
    texts = {f"j#{i}": f"topic {i % 4} filler {'x' * (i % 3)}" for i in range(12)}
    idx.upsert([
        IndexEntry(chunk_id=cid, vector=idx.text_embedder.embed(t), metadata=ChunkMetadata())
        for cid, t in texts.items()
    ])
    runs = [idx.search_top_k("topic filler", RetrievalConfig(k=6)) for _ in range(5)]
    first = [(h.chunk_id, h.similarity) for h in runs[0]]
    for run in runs[1:]:
        assert [(h.chunk_id, h.similarity) for h in run] == first
    distinct = set(texts.values()) | {"topic filler"}
    assert len(jitter.calls) == len(set(jitter.calls))
    assert set(jitter.calls) <= distinct


def _mock_remote(handler, dim=8):
    transport = httpx.MockTransport(handler)
    client = httpx.Client(transport=transport, base_url="http://embed.test")
    return RemoteEmbedder(endpoint="http://embed.test", dim=dim, client=client)


def test_remote_embedder_success():
    def handler(request):
        payload = json.loads(request.content)
        vecs = [[float(len(t))] + [0.0] * 7 for t in payload["texts"]]
        return httpx.Response(200, json={"vectors": vecs})

    emb = _mock_remote(handler)
    vec = emb.embed("abcd")
    assert vec.dim == 8
    assert abs(vec.norm - 1.0) <= 1e-6


def test_remote_embedder_http_error():
    def handler(request):
        return httpx.Response(503, json={"error": "overloaded"})

    with pytest.raises(RemoteUnavailable):
        _mock_remote(handler).embed("text")


def test_remote_embedder_bad_payload():
    def handler(request):
        return httpx.Response(200, json={"unexpected": []})

    with pytest.raises(RemoteUnavailable):
        _mock_remote(handler).embed("text")


def test_remote_embedder_wrong_dim():
    def handler(request):
        return httpx.Response(200, json={"vectors": [[1.0, 2.0]]})

    with pytest.raises(DimensionMismatch):
        _mock_remote(handler).embed("text")
