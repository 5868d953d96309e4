"""Ingestion-record normalization: whitespace cleanup and table flattening."""
from __future__ import annotations

import re
from typing import Any, Mapping

from ..errors import EmptyBody, InvalidDocument
from .types import DEFAULT_DOC_TYPE, YEAR_MAX, YEAR_MIN, DocType, SourceDocument, SubCorpus
from ..numutil import format_value


def normalize_text(body: str) -> str:
    """Collapse runs of spaces/tabs, drop blank lines, unify line endings.

    Idempotent: normalize_text(normalize_text(x)) == normalize_text(x).
    """
    body = body.replace("\r\n", "\n").replace("\r", "\n").replace(" ", " ")
    lines = []
    for line in body.split("\n"):
        line = re.sub(r"[ \t]+", " ", line).strip()
        if line:
            lines.append(line)
    return "\n".join(lines)


def render_fact_row(row: Mapping[str, Any]) -> str:
    """Flatten one tabular record to the pipe-delimited fact-row line."""
    city = str(row.get("city") or "-")
    year = str(row.get("year") or "-")
    sector = str(row.get("sector") or "all")
    indicator = str(row["indicator"])
    value = row["value"]
    value_s = format_value(float(value)) if isinstance(value, (int, float)) else str(value)
    unit = str(row.get("unit") or "").strip()
    tail = f"{value_s} {unit}".strip()
    return f"{city} | {year} | {sector} | {indicator} | {tail}"


def normalize_document(raw: Mapping[str, Any]) -> SourceDocument:
    """Turn one ingestion record into a normalized SourceDocument.

    ``raw["body"]`` is either plain text or a list of tabular row mappings
    ({city?, year?, sector?, indicator, value, unit?}), rendered one
    fact-row per line. Duplicate-id detection happens at the registry level.
    """
    doc_id = str(raw["doc_id"])
    sub_corpus = SubCorpus(raw["sub_corpus"])
    doc_type = DocType(raw["doc_type"]) if raw.get("doc_type") else DEFAULT_DOC_TYPE[sub_corpus]

    body = raw.get("body", "")
    if isinstance(body, (list, tuple)):
        body = "\n".join(render_fact_row(r) for r in body)
    body = normalize_text(str(body))
    if not body:
        raise EmptyBody(f"document {doc_id!r} has an empty body after normalization")

    year_range = None
    if raw.get("year_range") is not None:
        start, end = raw["year_range"]
        start, end = int(start), int(end)
        if start > end or start < YEAR_MIN or end > YEAR_MAX:
            raise InvalidDocument(f"document {doc_id!r} year_range [{start}, {end}] is invalid")
        year_range = (start, end)

    return SourceDocument(
        doc_id=doc_id,
        title=str(raw.get("title") or doc_id),
        sub_corpus=sub_corpus,
        doc_type=doc_type,
        body=body,
        city=raw.get("city"),
        year_range=year_range,
        language=str(raw.get("language") or "zh"),
    )
