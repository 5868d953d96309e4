"""Corpus-level diagnostic validation."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .types import YEAR_MAX, YEAR_MIN, Chunk, Sector


@dataclass
class ValidationReport:
    duplicate_chunk_ids: list[str] = field(default_factory=list)
    out_of_range_years: list[str] = field(default_factory=list)
    unknown_sectors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.duplicate_chunk_ids or self.out_of_range_years or self.unknown_sectors)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "duplicate_chunk_ids": self.duplicate_chunk_ids,
            "out_of_range_years": self.out_of_range_years,
            "unknown_sectors": self.unknown_sectors,
        }


def validate_corpus(chunks: Iterable[Chunk]) -> ValidationReport:
    """Diagnostic only: never raises, reports duplicates, bad years, bad sectors."""
    report = ValidationReport()
    seen: set[str] = set()
    for chunk in chunks:
        if chunk.chunk_id in seen:
            if chunk.chunk_id not in report.duplicate_chunk_ids:
                report.duplicate_chunk_ids.append(chunk.chunk_id)
        seen.add(chunk.chunk_id)
        year = chunk.metadata.year
        if year is not None and not (YEAR_MIN <= year <= YEAR_MAX):
            report.out_of_range_years.append(chunk.chunk_id)
        sector = chunk.metadata.sector
        if sector is not None and not isinstance(sector, Sector):
            report.unknown_sectors.append(chunk.chunk_id)
    return report
