"""Expected-field specs and their detection inside answers.

Detection runs over the answer prose with citation markers stripped (a doc
id like "beijing-2025-targets#0" must not count as mentioning the city or
the year). A detected field is grounded only when the same match succeeds
against the text of at least one cited evidence chunk.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

from ..agents import QAAnswer
from ..agents.types import CITATION_RE, citation_ids
from ..corpus import Sector
from ..numutil import numeric_match, year_token_present

FIELD_NAMES: tuple[str, ...] = ("region", "year", "sector", "numeric")

# surface forms accepted as naming each sector in free text
SECTOR_ALIASES: dict[Sector, tuple[str, ...]] = {
    Sector.Industry: ("industry", "industrial", "manufacturing"),
    Sector.Energy: ("energy", "power", "electricity"),
    Sector.Transport: ("transport", "transportation", "traffic", "vehicle", "freight"),
    Sector.Buildings: ("building", "buildings"),
    Sector.Waste: ("waste",),
    Sector.CarbonSink: ("carbon sink", "forest", "wetland", "ecological conservation"),
    Sector.CrossCutting: ("cross-cutting", "economy-wide", "citywide"),
}


class FieldStatus(str, Enum):
    DetectedGrounded = "DetectedGrounded"
    DetectedUngrounded = "DetectedUngrounded"
    Missed = "Missed"
    NotRequired = "NotRequired"


@dataclass(frozen=True)
class RegionExpectation:
    name: str
    aliases: tuple[str, ...]

    def __post_init__(self):
        if not self.aliases:
            raise ValueError("region expectation needs at least one alias")


@dataclass(frozen=True)
class SectorExpectation:
    sector: Sector
    aliases: tuple[str, ...]

    def __post_init__(self):
        if not self.aliases:
            raise ValueError("sector expectation needs at least one alias")


@dataclass(frozen=True)
class NumericExpectation:
    value: float
    unit: str
    rel_tol: float = 0.005


@dataclass(frozen=True)
class ExpectedFields:
    region: RegionExpectation | None = None
    year: int | None = None
    sector: SectorExpectation | None = None
    numeric: NumericExpectation | None = None

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "ExpectedFields":
        region = None
        if d.get("region") is not None:
            raw = d["region"]
            if isinstance(raw, str):
                raw = {"name": raw}
            name = raw["name"]
            aliases = tuple(raw.get("aliases") or (name,))
            if name not in aliases:
                aliases = (name,) + aliases
            region = RegionExpectation(name=name, aliases=aliases)

        sector = None
        if d.get("sector") is not None:
            raw = d["sector"]
            if isinstance(raw, str):
                raw = {"sector": raw}
            sec = Sector(raw.get("sector") or raw["name"])
            aliases = tuple(raw.get("aliases") or SECTOR_ALIASES[sec])
            sector = SectorExpectation(sector=sec, aliases=aliases)

        numeric = None
        if d.get("numeric") is not None:
            raw = d["numeric"]
            numeric = NumericExpectation(
                value=float(raw["value"]),
                unit=raw.get("unit", ""),
                rel_tol=float(raw.get("rel_tol", 0.005)),
            )

        return cls(region=region, year=d.get("year"), sector=sector, numeric=numeric)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        if self.region:
            out["region"] = {"name": self.region.name, "aliases": list(self.region.aliases)}
        if self.year is not None:
            out["year"] = self.year
        if self.sector:
            out["sector"] = {"sector": self.sector.sector.value,
                             "aliases": list(self.sector.aliases)}
        if self.numeric:
            out["numeric"] = {"value": self.numeric.value, "unit": self.numeric.unit,
                              "rel_tol": self.numeric.rel_tol}
        return out


def _alias_present(text: str, aliases: tuple[str, ...], whole_words: bool) -> bool:
    fold = text.casefold()
    for alias in aliases:
        if whole_words:
            if re.search(rf"\b{re.escape(alias)}\b", text, re.IGNORECASE):
                return True
        elif alias.casefold() in fold:
            return True
    return False


def extract_fields(answer: QAAnswer, expected: ExpectedFields) -> dict[str, FieldStatus]:
    """Per-field detection statuses for one answer."""
    prose = CITATION_RE.sub(" ", answer.answer_text)
    cited = citation_ids(answer.answer_text)
    cited_texts = [e.excerpt for e in answer.evidence if e.chunk_id in cited]

    def status(detected: bool, grounded: bool) -> FieldStatus:
        if not detected:
            return FieldStatus.Missed
        return FieldStatus.DetectedGrounded if grounded else FieldStatus.DetectedUngrounded

    out: dict[str, FieldStatus] = dict.fromkeys(FIELD_NAMES, FieldStatus.NotRequired)

    if expected.region is not None:
        aliases = expected.region.aliases
        out["region"] = status(
            _alias_present(prose, aliases, whole_words=False),
            any(_alias_present(t, aliases, whole_words=False) for t in cited_texts),
        )
    if expected.year is not None:
        out["year"] = status(
            year_token_present(prose, expected.year),
            any(year_token_present(t, expected.year) for t in cited_texts),
        )
    if expected.sector is not None:
        aliases = expected.sector.aliases
        out["sector"] = status(
            _alias_present(prose, aliases, whole_words=True),
            any(_alias_present(t, aliases, whole_words=True) for t in cited_texts),
        )
    if expected.numeric is not None:
        spec = expected.numeric
        out["numeric"] = status(
            numeric_match(prose, spec.value, spec.unit, spec.rel_tol),
            any(numeric_match(t, spec.value, spec.unit, spec.rel_tol) for t in cited_texts),
        )
    return out
