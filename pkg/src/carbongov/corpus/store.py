"""Corpus registry: holds normalized documents and their chunks, with
line-delimited interchange files (documents.jsonl / chunks.jsonl).
"""
from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Any, Iterable, Iterator, Mapping

from ..errors import DuplicateDocId, IoFailure
from .chunking import ChunkingConfig, chunk_document
from .normalize import normalize_document
from .types import Chunk, SourceDocument, SubCorpus, DocType, fact_rows_in, parse_sector

DOCUMENTS_FILE = "documents.jsonl"
CHUNKS_FILE = "chunks.jsonl"


class CorpusStore:
    """In-memory corpus registry. Reads are lock-free; mutation is single-writer."""

    def __init__(self) -> None:
        self._documents: dict[str, SourceDocument] = {}
        self._chunks: dict[str, Chunk] = {}
        self._write_lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._chunks)

    @property
    def documents(self) -> dict[str, SourceDocument]:
        return self._documents

    def add_document(self, doc: SourceDocument, chunks: Iterable[Chunk]) -> None:
        with self._write_lock:
            if doc.doc_id in self._documents:
                raise DuplicateDocId(f"document id {doc.doc_id!r} already ingested")
            self._documents[doc.doc_id] = doc
            for chunk in chunks:
                self._chunks[chunk.chunk_id] = chunk

    def chunk(self, chunk_id: str) -> Chunk | None:
        return self._chunks.get(chunk_id)

    def document(self, doc_id: str) -> SourceDocument | None:
        return self._documents.get(doc_id)

    def doc_title(self, chunk_id: str) -> str:
        chunk = self._chunks.get(chunk_id)
        if chunk is None:
            return chunk_id.split("#", 1)[0]
        doc = self._documents.get(chunk.doc_id)
        return doc.title if doc else chunk.doc_id

    def iter_chunks(self) -> Iterator[Chunk]:
        return iter(self._chunks.values())

    def chunks_for(self, doc_id: str) -> list[Chunk]:
        return [c for c in self._chunks.values() if c.doc_id == doc_id]

    def save(self, directory: str | Path) -> None:
        directory = Path(directory)
        try:
            directory.mkdir(parents=True, exist_ok=True)
            with open(directory / DOCUMENTS_FILE, "w", encoding="utf-8") as fh:
                for doc in self._documents.values():
                    fh.write(json.dumps(_doc_to_dict(doc), ensure_ascii=False) + "\n")
            with open(directory / CHUNKS_FILE, "w", encoding="utf-8") as fh:
                for chunk in self._chunks.values():
                    fh.write(json.dumps(chunk.to_dict(), ensure_ascii=False) + "\n")
        except OSError as exc:
            raise IoFailure(f"cannot write corpus to {directory}: {exc}") from exc

    @classmethod
    def load(cls, directory: str | Path) -> "CorpusStore":
        directory = Path(directory)
        store = cls()
        try:
            with open(directory / DOCUMENTS_FILE, encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        d = json.loads(line)
                        store._documents[d["doc_id"]] = _doc_from_dict(d)
            with open(directory / CHUNKS_FILE, encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        chunk = Chunk.from_dict(json.loads(line))
                        store._chunks[chunk.chunk_id] = chunk
        except OSError as exc:
            raise IoFailure(f"cannot read corpus from {directory}: {exc}") from exc
        return store


def _doc_to_dict(doc: SourceDocument) -> dict:
    return {
        "doc_id": doc.doc_id,
        "title": doc.title,
        "sub_corpus": doc.sub_corpus.value,
        "doc_type": doc.doc_type.value,
        "city": doc.city,
        "year_range": list(doc.year_range) if doc.year_range else None,
        "language": doc.language,
        "body": doc.body,
    }


def _doc_from_dict(d: dict) -> SourceDocument:
    return SourceDocument(
        doc_id=d["doc_id"],
        title=d["title"],
        sub_corpus=SubCorpus(d["sub_corpus"]),
        doc_type=DocType(d["doc_type"]),
        body=d["body"],
        city=d.get("city"),
        year_range=tuple(d["year_range"]) if d.get("year_range") else None,
        language=d.get("language", "zh"),
    )


def ingest_records(
    records: Iterable[Mapping[str, Any]],
    cfg: ChunkingConfig | None = None,
    into: CorpusStore | None = None,
) -> tuple[CorpusStore, list[str]]:
    """Normalize, chunk, and register each ingestion record.

    Returns the populated store (``into`` when given, else a fresh one)
    plus sector-mapping warnings. Raises EmptyBody / DuplicateDocId /
    InvalidDocument on bad records.
    """
    store = into if into is not None else CorpusStore()
    warnings: list[str] = []
    for raw in records:
        doc = normalize_document(raw)
        for row in fact_rows_in(doc.body):
            _, warning = parse_sector(row.sector_raw if row.sector_raw not in ("", "-") else None)
            if warning:
                warnings.append(f"{doc.doc_id}: {warning}")
        store.add_document(doc, chunk_document(doc, cfg))
    return store, warnings


def read_interchange(path: str | Path) -> list[dict]:
    """Read a one-record-per-line corpus interchange file."""
    records = []
    try:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    records.append(json.loads(line))
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    return records
