"""Domain types for the document corpus: documents, chunks, metadata, fact rows."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

YEAR_MIN = 1900
YEAR_MAX = 2100


class SubCorpus(str, Enum):
    Emissions = "Emissions"
    Policy = "Policy"
    Case = "Case"
    Academic = "Academic"


class DocType(str, Enum):
    Table = "Table"
    PolicyText = "PolicyText"
    CaseReport = "CaseReport"
    AcademicText = "AcademicText"


class Sector(str, Enum):
    Industry = "Industry"
    Energy = "Energy"
    Transport = "Transport"
    Buildings = "Buildings"
    Waste = "Waste"
    CarbonSink = "CarbonSink"
    CrossCutting = "CrossCutting"


# default doc type per sub-corpus, used when an ingestion record omits it
DEFAULT_DOC_TYPE = {
    SubCorpus.Emissions: DocType.Table,
    SubCorpus.Policy: DocType.PolicyText,
    SubCorpus.Case: DocType.CaseReport,
    SubCorpus.Academic: DocType.AcademicText,
}

_SECTOR_SYNONYMS = {
    "industry": Sector.Industry,
    "industrial": Sector.Industry,
    "energy": Sector.Energy,
    "power": Sector.Energy,
    "transport": Sector.Transport,
    "transportation": Sector.Transport,
    "traffic": Sector.Transport,
    "buildings": Sector.Buildings,
    "building": Sector.Buildings,
    "waste": Sector.Waste,
    "carbonsink": Sector.CarbonSink,
    "carbon sink": Sector.CarbonSink,
    "sink": Sector.CarbonSink,
    "crosscutting": Sector.CrossCutting,
    "cross-cutting": Sector.CrossCutting,
    "all": Sector.CrossCutting,
}


def parse_sector(raw: str | None) -> tuple[Sector | None, str | None]:
    """Map a raw sector string to the closed vocabulary.

    Unknown strings map to CrossCutting; the second element carries a warning
    message in that case (the validation report collects them).
    """
    if raw is None or not raw.strip():
        return None, None
    key = raw.strip().casefold()
    if key in _SECTOR_SYNONYMS:
        return _SECTOR_SYNONYMS[key], None
    for s in Sector:
        if s.value.casefold() == key:
            return s, None
    return Sector.CrossCutting, f"unknown sector {raw!r} mapped to CrossCutting"


@dataclass(frozen=True)
class SourceDocument:
    doc_id: str
    title: str
    sub_corpus: SubCorpus
    doc_type: DocType
    body: str
    city: str | None = None
    year_range: tuple[int, int] | None = None
    language: str = "zh"


@dataclass(frozen=True)
class ChunkMetadata:
    city: str | None = None
    year: int | None = None
    sector: Sector | None = None
    doc_type: DocType | None = None
    sub_corpus: SubCorpus | None = None

    def to_dict(self) -> dict:
        return {
            "city": self.city,
            "year": self.year,
            "sector": self.sector.value if isinstance(self.sector, Sector) else self.sector,
            "doc_type": self.doc_type.value if self.doc_type else None,
            "sub_corpus": self.sub_corpus.value if self.sub_corpus else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ChunkMetadata":
        return cls(
            city=d.get("city"),
            year=d.get("year"),
            sector=Sector(d["sector"]) if d.get("sector") else None,
            doc_type=DocType(d["doc_type"]) if d.get("doc_type") else None,
            sub_corpus=SubCorpus(d["sub_corpus"]) if d.get("sub_corpus") else None,
        )


@dataclass(frozen=True)
class Chunk:
    chunk_id: str  # "{doc_id}#{ordinal}"
    doc_id: str
    ordinal: int
    text: str
    metadata: ChunkMetadata
    char_span: tuple[int, int]

    def to_dict(self) -> dict:
        return {
            "chunk_id": self.chunk_id,
            "doc_id": self.doc_id,
            "ordinal": self.ordinal,
            "text": self.text,
            "metadata": self.metadata.to_dict(),
            "char_span": list(self.char_span),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Chunk":
        return cls(
            chunk_id=d["chunk_id"],
            doc_id=d["doc_id"],
            ordinal=d["ordinal"],
            text=d["text"],
            metadata=ChunkMetadata.from_dict(d["metadata"]),
            char_span=(d["char_span"][0], d["char_span"][1]),
        )


@dataclass(frozen=True)
class FactRow:
    """One flattened table row: "city | year | sector | indicator | value unit"."""
    city: str | None
    year: int | None
    sector_raw: str
    sector: Sector | None
    indicator: str
    value: float
    unit: str
    line: str


_FACT_ROW_RE = re.compile(
    r"^\s*([^|\n]*?)\s*\|\s*([^|\n]*?)\s*\|\s*([^|\n]*?)\s*\|\s*([^|\n]+?)\s*\|\s*([^|\n]+?)\s*$"
)
_VALUE_UNIT_RE = re.compile(r"^(\d{1,3}(?:,\d{3})+|\d+(?:\.\d+)?)\s*(.*)$")


def parse_fact_row(line: str) -> FactRow | None:
    """Parse one body line as a fact row; None when the line is prose."""
    m = _FACT_ROW_RE.match(line)
    if not m:
        return None
    city_s, year_s, sector_s, indicator, value_unit = m.groups()
    vm = _VALUE_UNIT_RE.match(value_unit)
    if not vm:
        return None
    year = None
    if year_s and year_s != "-":
        if not year_s.isdigit():
            return None
        year = int(year_s)
    sector, _ = parse_sector(sector_s if sector_s not in ("", "-") else None)
    return FactRow(
        city=city_s if city_s not in ("", "-") else None,
        year=year,
        sector_raw=sector_s,
        sector=sector,
        indicator=indicator,
        value=float(vm.group(1).replace(",", "")),
        unit=vm.group(2).strip(),
        line=line.strip(),
    )


def fact_rows_in(text: str) -> list[FactRow]:
    rows = []
    for line in text.splitlines():
        row = parse_fact_row(line)
        if row is not None:
            rows.append(row)
    return rows
