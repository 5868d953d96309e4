"""Exact-search vector store with metadata filters and snapshot persistence.

Search is exhaustive cosine over all matching entries (corpora at planning
scale are small, and exactness keeps retrieval oracle-checkable). Upserts
are write-ahead logged before acknowledging when a backing path is set;
persist() compacts the log into a checksummed snapshot.
"""
from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from ..corpus.types import ChunkMetadata, Sector, SubCorpus
from ..errors import CorruptSnapshot, DimensionMismatch, InvalidConfig, IoFailure
from .cache import CachingEmbedder, VectorCache
from .embedder import Embedder, EmbeddingVector

FORMAT_VERSION = 1


@dataclass(frozen=True)
class IndexEntry:
    chunk_id: str
    vector: EmbeddingVector
    metadata: ChunkMetadata


@dataclass(frozen=True)
class MetadataFilter:
    """Conjunctive filter; absent fields match everything."""

    city: str | None = None
    year_range: tuple[int, int] | None = None
    sectors: frozenset[Sector] | None = None
    sub_corpora: frozenset[SubCorpus] | None = None

    def matches(self, md: ChunkMetadata) -> bool:
        if self.city is not None and md.city != self.city:
            return False
        if self.year_range is not None:
            if md.year is None or not (self.year_range[0] <= md.year <= self.year_range[1]):
                return False
        if self.sectors is not None:
            if md.sector is None or md.sector not in self.sectors:
                return False
        if self.sub_corpora is not None:
            if md.sub_corpus is None or md.sub_corpus not in self.sub_corpora:
                return False
        return True

    @property
    def empty(self) -> bool:
        return (
            self.city is None
            and self.year_range is None
            and self.sectors is None
            and self.sub_corpora is None
        )


EMPTY_FILTER = MetadataFilter()

# Similarities are rounded to this many decimals before ranking so that the
# ordering is a function of the real-valued cosines, not of floating-point
# accumulation order.
SIM_DECIMALS = 12


@dataclass(frozen=True)
class RetrievalConfig:
    k: int = 5

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidConfig(f"k must be >= 1, got {self.k}")


@dataclass(frozen=True)
class SearchHit:
    chunk_id: str
    similarity: float


class VectorIndex:
    """Single-writer vector index; concurrent readers see a consistent snapshot."""

    def __init__(
        self,
        embedder: Embedder,
        cache: VectorCache | None = None,
        path: str | Path | None = None,
    ) -> None:
        self.text_embedder = CachingEmbedder(embedder, cache) if cache is not None else embedder
        self.embedder_id = embedder.embedder_id
        self.dim = embedder.dim
        self.path = Path(path) if path else None
        self._entries: dict[str, IndexEntry] = {}
        self._matrix: np.ndarray | None = None
        self._row_ids: list[str] = []
        self._write_lock = threading.Lock()
        if self.path:
            self.path.parent.mkdir(parents=True, exist_ok=True)

    def __len__(self) -> int:
        return len(self._entries)

    def entry(self, chunk_id: str) -> IndexEntry | None:
        return self._entries.get(chunk_id)

    @property
    def _wal_path(self) -> Path | None:
        return self.path.with_name(self.path.name + ".wal") if self.path else None

    # -- writes ------------------------------------------------------------

    def upsert(self, entries: Iterable[IndexEntry]) -> int:
        entries = list(entries)
        for entry in entries:
            if entry.vector.dim != self.dim:
                raise DimensionMismatch(
                    f"entry {entry.chunk_id} has dimension {entry.vector.dim}, index expects {self.dim}"
                )
        with self._write_lock:
            if self._wal_path is not None:
                try:
                    with open(self._wal_path, "a", encoding="utf-8") as fh:
                        for entry in entries:
                            fh.write(json.dumps(_entry_to_dict(entry)) + "\n")
                        fh.flush()
                except OSError as exc:
                    raise IoFailure(f"cannot append to write-ahead log: {exc}") from exc
            for entry in entries:
                self._entries[entry.chunk_id] = entry
            self._rebuild()
        return len(entries)

    def upsert_texts(self, items: Iterable[tuple[str, str, ChunkMetadata]]) -> int:
        """Embed (chunk_id, text, metadata) triples and upsert the results."""
        return self.upsert(
            IndexEntry(chunk_id=cid, vector=self.text_embedder.embed(text), metadata=meta)
            for cid, text, meta in items
        )

    def _rebuild(self) -> None:
        self._row_ids = list(self._entries.keys())
        if self._row_ids:
            self._matrix = np.stack([self._entries[cid].vector.values for cid in self._row_ids])
        else:
            self._matrix = None

    # -- search ------------------------------------------------------------

    def search_top_k(
        self,
        query: str,
        cfg: RetrievalConfig | None = None,
        flt: MetadataFilter = EMPTY_FILTER,
    ) -> list[SearchHit]:
        cfg = cfg or RetrievalConfig()
        qvec = self.text_embedder.embed(query)
        return self.search_vector(qvec, cfg, flt)

    def search_vector(
        self,
        qvec: EmbeddingVector,
        cfg: RetrievalConfig | None = None,
        flt: MetadataFilter = EMPTY_FILTER,
    ) -> list[SearchHit]:
        cfg = cfg or RetrievalConfig()
        if qvec.dim != self.dim:
            raise DimensionMismatch(f"query dimension {qvec.dim}, index expects {self.dim}")
        matrix, row_ids = self._matrix, self._row_ids
        if matrix is None or qvec.is_zero:
            return []
        mask = [flt.empty or flt.matches(self._entries[cid].metadata) for cid in row_ids]
        rows = [i for i, ok in enumerate(mask) if ok]
        if not rows:
            return []
        sims = matrix[rows] @ qvec.values
        # Quantize before ordering: distinct texts can share the exact same
        # real-valued cosine, and different summation orders then land one
        # ulp apart, turning a genuine tie into an arbitrary ranking.
        ranked = sorted(
            ((round(float(sims[j]), SIM_DECIMALS), row_ids[rows[j]]) for j in range(len(rows))),
            key=lambda t: (-t[0], t[1]),
        )
        return [
            SearchHit(chunk_id=cid, similarity=max(-1.0, min(1.0, sim)))
            for sim, cid in ranked[: cfg.k]
        ]

    # -- persistence -------------------------------------------------------

    def persist(self, path: str | Path | None = None) -> Path:
        target = Path(path) if path else self.path
        if target is None:
            raise IoFailure("no snapshot path configured")
        entry_lines = [
            json.dumps(_entry_to_dict(self._entries[cid])) + "\n" for cid in self._entries
        ]
        digest = hashlib.sha256("".join(entry_lines).encode("utf-8")).hexdigest()
        header = {
            "format_version": FORMAT_VERSION,
            "dim": self.dim,
            "embedder_id": self.embedder_id,
            "entry_count": len(entry_lines),
            "checksum": digest,
        }
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            tmp = target.with_name(target.name + ".tmp")
            with open(tmp, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(header) + "\n")
                fh.writelines(entry_lines)
            tmp.replace(target)
            wal = self._wal_path if self.path else None
            if wal is not None and wal.exists():
                wal.unlink()
        except OSError as exc:
            raise IoFailure(f"cannot write snapshot {target}: {exc}") from exc
        return target

    @classmethod
    def load(
        cls,
        path: str | Path,
        embedder: Embedder,
        cache: VectorCache | None = None,
    ) -> "VectorIndex":
        path = Path(path)
        try:
            with open(path, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise IoFailure(f"cannot read snapshot {path}: {exc}") from exc
        if not lines:
            raise CorruptSnapshot(f"snapshot {path} is empty")
        try:
            header = json.loads(lines[0])
        except ValueError as exc:
            raise CorruptSnapshot(f"snapshot {path} header unreadable: {exc}") from exc
        if header.get("format_version") != FORMAT_VERSION:
            raise CorruptSnapshot(f"unsupported snapshot version {header.get('format_version')}")
        if header.get("embedder_id") != embedder.embedder_id:
            raise InvalidConfig(
                f"snapshot was built with embedder {header.get('embedder_id')!r}; "
                f"configured embedder is {embedder.embedder_id!r} (rebuild the index)"
            )
        entry_lines = [ln for ln in lines[1:] if ln.strip()]
        if len(entry_lines) != header.get("entry_count"):
            raise CorruptSnapshot(
                f"snapshot {path} holds {len(entry_lines)} entries, header says {header.get('entry_count')}"
            )
        digest = hashlib.sha256("".join(ln + "\n" for ln in entry_lines).encode("utf-8")).hexdigest()
        if digest != header.get("checksum"):
            raise CorruptSnapshot(f"snapshot {path} checksum mismatch")
        index = cls(embedder, cache=cache, path=path)
        entries = []
        for ln in entry_lines:
            try:
                entries.append(_entry_from_dict(json.loads(ln)))
            except (ValueError, KeyError) as exc:
                raise CorruptSnapshot(f"snapshot {path} entry unreadable: {exc}") from exc
        with index._write_lock:
            for entry in entries:
                if entry.vector.dim != index.dim:
                    raise CorruptSnapshot(
                        f"snapshot entry {entry.chunk_id} dimension {entry.vector.dim} != {index.dim}"
                    )
                index._entries[entry.chunk_id] = entry
            index._replay_wal()
            index._rebuild()
        return index

    def _replay_wal(self) -> None:
        wal = self._wal_path
        if wal is None or not wal.exists():
            return
        with open(wal, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    entry = _entry_from_dict(json.loads(line))
                    self._entries[entry.chunk_id] = entry


def _entry_to_dict(entry: IndexEntry) -> dict:
    return {
        "chunk_id": entry.chunk_id,
        "values": entry.vector.values.tolist(),
        "metadata": entry.metadata.to_dict(),
    }


def _entry_from_dict(d: dict) -> IndexEntry:
    values = np.asarray(d["values"], dtype=np.float64)
    return IndexEntry(
        chunk_id=d["chunk_id"],
        vector=EmbeddingVector(values=values, norm=float(np.linalg.norm(values))),
        metadata=ChunkMetadata.from_dict(d["metadata"]),
    )
