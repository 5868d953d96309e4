from .types import (
    Chunk,
    ChunkMetadata,
    DocType,
    FactRow,
    Sector,
    SourceDocument,
    SubCorpus,
    fact_rows_in,
    parse_fact_row,
    parse_sector,
)
from .chunking import ChunkingConfig, chunk_document, compute_spans
from .normalize import normalize_document, normalize_text, render_fact_row
from .store import CorpusStore, ingest_records, read_interchange
from .validate import ValidationReport, validate_corpus

__all__ = [
    "Chunk",
    "ChunkMetadata",
    "ChunkingConfig",
    "CorpusStore",
    "DocType",
    "FactRow",
    "Sector",
    "SourceDocument",
    "SubCorpus",
    "ValidationReport",
    "chunk_document",
    "compute_spans",
    "fact_rows_in",
    "ingest_records",
    "normalize_document",
    "normalize_text",
    "parse_fact_row",
    "parse_sector",
    "read_interchange",
    "render_fact_row",
    "validate_corpus",
]
