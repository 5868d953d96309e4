"""Deterministic paragraph-first chunking.

Splits occur at paragraph boundaries where possible (normalized bodies
separate paragraphs with single newlines), else at sentence ends, else as a
hard cut at max_chunk_chars. Spans index into the parent body so chunk text
is always reconstructible.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidConfig
from .types import Chunk, ChunkMetadata, SourceDocument, fact_rows_in

_SENTENCE_END = ".!?。！？"


@dataclass(frozen=True)
class ChunkingConfig:
    max_chunk_chars: int = 800
    overlap_chars: int = 80


def _boundary(body: str, start: int, limit: int) -> int:
    """Best split position in (start, limit]: paragraph > sentence > hard cut."""
    for i in range(limit, start, -1):
        if body[i - 1] == "\n":
            return i
    best = limit
    for i in range(limit, start, -1):
        if body[i - 1] in _SENTENCE_END and (i == len(body) or body[i] == " "):
            best = i
            while best < limit and body[best] == " ":
                best += 1
            return best
    return best


def compute_spans(body: str, cfg: ChunkingConfig) -> list[tuple[int, int]]:
    spans = []
    n = len(body)
    start = 0
    while start < n:
        limit = min(start + cfg.max_chunk_chars, n)
        end = n if limit == n else _boundary(body, start, limit)
        spans.append((start, end))
        if end >= n:
            break
        start = max(end - cfg.overlap_chars, start + 1)
    return spans


def _chunk_metadata(doc: SourceDocument, text: str) -> ChunkMetadata:
    city = doc.city
    year = None
    sector = None
    if doc.year_range and doc.year_range[0] == doc.year_range[1]:
        year = doc.year_range[0]
    rows = fact_rows_in(text)
    if rows:
        # per-row metadata applies only when the chunk has a single subject
        cities = {r.city for r in rows}
        if len(cities) == 1 and None not in cities:
            city = rows[0].city
        years = {r.year for r in rows}
        if len(years) == 1 and None not in years:
            year = rows[0].year
        sectors = {r.sector for r in rows}
        if len(sectors) == 1 and None not in sectors:
            sector = rows[0].sector
    return ChunkMetadata(
        city=city,
        year=year,
        sector=sector,
        doc_type=doc.doc_type,
        sub_corpus=doc.sub_corpus,
    )


def chunk_document(doc: SourceDocument, cfg: ChunkingConfig | None = None) -> list[Chunk]:
    cfg = cfg or ChunkingConfig()
    if cfg.max_chunk_chars < 64:
        raise InvalidConfig(f"max_chunk_chars must be >= 64, got {cfg.max_chunk_chars}")
    if cfg.overlap_chars < 0 or cfg.overlap_chars >= cfg.max_chunk_chars:
        raise InvalidConfig(
            f"overlap_chars must satisfy 0 <= overlap < max, got {cfg.overlap_chars}"
        )
    chunks = []
    for ordinal, (start, end) in enumerate(compute_spans(doc.body, cfg)):
        text = doc.body[start:end]
        chunks.append(
            Chunk(
                chunk_id=f"{doc.doc_id}#{ordinal}",
                doc_id=doc.doc_id,
                ordinal=ordinal,
                text=text,
                metadata=_chunk_metadata(doc, text),
                char_span=(start, end),
            )
        )
    return chunks
