"""Structured outputs shared by the four agents.

Every type here serializes to plain dicts so the service layer and the
console can pass them around without knowing agent internals.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

from ..corpus import ChunkMetadata, Sector

# Citation markers are inline "[<chunk_id>]" tokens; chunk ids always have
# the form "<doc_id>#<ordinal>".
CITATION_RE = re.compile(r"\[([A-Za-z0-9._:\-]+#\d+)\]")


def citation_ids(text: str) -> set[str]:
    return set(CITATION_RE.findall(text))


class FlagKind(str, Enum):
    InsufficientEvidence = "InsufficientEvidence"
    ConflictingEvidence = "ConflictingEvidence"
    BoundaryMismatch = "BoundaryMismatch"


@dataclass(frozen=True)
class UncertaintyFlag:
    kind: FlagKind
    message: str
    involved_chunk_ids: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind in (FlagKind.ConflictingEvidence, FlagKind.BoundaryMismatch):
            if len(set(self.involved_chunk_ids)) < 2:
                raise ValueError(f"{self.kind.value} flags need at least two chunk ids")

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "message": self.message,
            "involved_chunk_ids": list(self.involved_chunk_ids),
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "UncertaintyFlag":
        return cls(FlagKind(d["kind"]), d["message"], tuple(d.get("involved_chunk_ids", ())))


@dataclass(frozen=True)
class EvidenceItem:
    """A retrieved chunk carried along with the output it supports."""

    chunk_id: str
    similarity: float
    metadata: ChunkMetadata
    excerpt: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "chunk_id": self.chunk_id,
            "similarity": self.similarity,
            "metadata": self.metadata.to_dict(),
            "excerpt": self.excerpt,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "EvidenceItem":
        return cls(d["chunk_id"], d["similarity"], ChunkMetadata.from_dict(d["metadata"]), d["excerpt"])


@dataclass(frozen=True)
class KeyNumber:
    value: float
    unit: str
    indicator: str
    source_chunk_id: str
    city: str | None = None
    year: int | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "unit": self.unit,
            "indicator": self.indicator,
            "source_chunk_id": self.source_chunk_id,
            "city": self.city,
            "year": self.year,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "KeyNumber":
        return cls(d["value"], d["unit"], d["indicator"], d["source_chunk_id"],
                   d.get("city"), d.get("year"))


@dataclass
class QAAnswer:
    question: str
    answer_text: str
    evidence: list[EvidenceItem] = field(default_factory=list)
    key_numbers: list[KeyNumber] = field(default_factory=list)
    flags: list[UncertaintyFlag] = field(default_factory=list)

    def cited_ids(self) -> set[str]:
        return citation_ids(self.answer_text)

    def validate(self) -> None:
        """Citation closure: markers must resolve inside the evidence list."""
        have = {e.chunk_id for e in self.evidence}
        loose = self.cited_ids() - have
        if loose:
            raise ValueError(f"citations without evidence: {sorted(loose)}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "question": self.question,
            "answer_text": self.answer_text,
            "evidence": [e.to_dict() for e in self.evidence],
            "key_numbers": [k.to_dict() for k in self.key_numbers],
            "flags": [f.to_dict() for f in self.flags],
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "QAAnswer":
        return cls(
            question=d["question"],
            answer_text=d["answer_text"],
            evidence=[EvidenceItem.from_dict(e) for e in d.get("evidence", [])],
            key_numbers=[KeyNumber.from_dict(k) for k in d.get("key_numbers", [])],
            flags=[UncertaintyFlag.from_dict(f) for f in d.get("flags", [])],
        )


class TrendStage(str, Enum):
    Rising = "Rising"
    Plateau = "Plateau"
    Peaked = "Peaked"
    Declining = "Declining"
    Unknown = "Unknown"


@dataclass(frozen=True)
class SectorShare:
    share: float
    chunk_ids: tuple[str, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"share": self.share, "chunk_ids": list(self.chunk_ids)}


@dataclass
class AssessmentDiagnostics:
    city: str
    total_emissions: KeyNumber | None
    sector_shares: dict[Sector, SectorShare]
    trend_stage: TrendStage
    peaking_status: str
    peaking_year: int | None
    key_emitters: list[Sector]
    time_span: tuple[int, int] | None
    evidence: list[EvidenceItem] = field(default_factory=list)
    flags: list[UncertaintyFlag] = field(default_factory=list)

    def validate(self) -> None:
        for sector, ss in self.sector_shares.items():
            if not 0.0 <= ss.share <= 1.0:
                raise ValueError(f"share for {sector} out of [0, 1]: {ss.share}")
        total = sum(ss.share for ss in self.sector_shares.values())
        # a breakdown close to 100% claims completeness and must stay close
        if len(self.sector_shares) >= 4 and not 0.95 <= total <= 1.05:
            raise ValueError(f"sector shares claim completeness but sum to {total:.3f}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "city": self.city,
            "total_emissions": self.total_emissions.to_dict() if self.total_emissions else None,
            "sector_shares": {s.value: ss.to_dict() for s, ss in self.sector_shares.items()},
            "trend_stage": self.trend_stage.value,
            "peaking_status": self.peaking_status,
            "peaking_year": self.peaking_year,
            "key_emitters": [s.value for s in self.key_emitters],
            "time_span": list(self.time_span) if self.time_span else None,
            "evidence": [e.to_dict() for e in self.evidence],
            "flags": [f.to_dict() for f in self.flags],
        }


class PlanSection(str, Enum):
    SpatialInterventions = "SpatialInterventions"
    InfrastructureUpgrades = "InfrastructureUpgrades"
    PolicyMechanisms = "PolicyMechanisms"
    MarketIncentives = "MarketIncentives"
    MonitoringEvaluation = "MonitoringEvaluation"


PLAN_SECTION_ORDER: tuple[PlanSection, ...] = (
    PlanSection.SpatialInterventions,
    PlanSection.InfrastructureUpgrades,
    PlanSection.PolicyMechanisms,
    PlanSection.MarketIncentives,
    PlanSection.MonitoringEvaluation,
)


@dataclass(frozen=True)
class Recommendation:
    text: str
    sector: Sector | None
    chunk_ids: tuple[str, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "text": self.text,
            "sector": self.sector.value if self.sector else None,
            "chunk_ids": list(self.chunk_ids),
        }


@dataclass(frozen=True)
class PlanGoal:
    text: str
    indicator: str
    target_year: int | None

    def to_dict(self) -> dict[str, Any]:
        return {"text": self.text, "indicator": self.indicator, "target_year": self.target_year}


@dataclass
class GovernancePlan:
    city: str
    goals: list[PlanGoal]
    sections: dict[PlanSection, list[Recommendation]]
    flags: list[UncertaintyFlag] = field(default_factory=list)

    def validate(self) -> None:
        if tuple(self.sections.keys()) != PLAN_SECTION_ORDER:
            raise ValueError("plan must carry all five sections in canonical order")
        for section, recs in self.sections.items():
            for rec in recs:
                if not rec.chunk_ids:
                    raise ValueError(f"uncited recommendation in {section.value}")
            if not recs and not any(
                f.kind is FlagKind.InsufficientEvidence and section.value in f.message
                for f in self.flags
            ):
                raise ValueError(f"empty section {section.value} lacks an InsufficientEvidence flag")

    def to_dict(self) -> dict[str, Any]:
        return {
            "city": self.city,
            "goals": [g.to_dict() for g in self.goals],
            "sections": {s.value: [r.to_dict() for r in recs] for s, recs in self.sections.items()},
            "flags": [f.to_dict() for f in self.flags],
        }


class ReportSection(str, Enum):
    Status = "Status"
    Problems = "Problems"
    Targets = "Targets"
    Interventions = "Interventions"
    MonitoringEvaluation = "MonitoringEvaluation"
    Sources = "Sources"


REPORT_SECTION_ORDER: tuple[ReportSection, ...] = (
    ReportSection.Status,
    ReportSection.Problems,
    ReportSection.Targets,
    ReportSection.Interventions,
    ReportSection.MonitoringEvaluation,
    ReportSection.Sources,
)


@dataclass
class ReportSectionContent:
    heading: ReportSection
    paragraphs: list[str]

    def to_dict(self) -> dict[str, Any]:
        return {"heading": self.heading.value, "paragraphs": list(self.paragraphs)}


@dataclass
class ReportDocument:
    title: str
    city: str
    sections: list[ReportSectionContent]
    source_register: list[tuple[str, str]]

    def body_text(self) -> str:
        return "\n".join(p for s in self.sections for p in s.paragraphs)

    def cited_ids(self) -> set[str]:
        cited: set[str] = set()
        for s in self.sections:
            if s.heading is ReportSection.Sources:
                continue
            for p in s.paragraphs:
                cited |= citation_ids(p)
        return cited

    def validate(self) -> None:
        order = tuple(s.heading for s in self.sections)
        if order != REPORT_SECTION_ORDER:
            raise ValueError(f"section order {order} violates the mandatory sequence")
        register_ids = [cid for cid, _ in self.source_register]
        if len(register_ids) != len(set(register_ids)):
            raise ValueError("source register repeats a chunk id")
        if set(register_ids) != self.cited_ids():
            raise ValueError("source register does not match the cited chunk ids")

    def to_dict(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "city": self.city,
            "sections": [s.to_dict() for s in self.sections],
            "source_register": [[cid, title] for cid, title in self.source_register],
        }


class RequestKind(str, Enum):
    FactQuery = "FactQuery"
    Assess = "Assess"
    Plan = "Plan"
    Report = "Report"


class AgentRole(str, Enum):
    EvidenceQA = "EvidenceQA"
    Assessment = "Assessment"
    Planning = "Planning"
    Report = "Report"


@dataclass(frozen=True)
class WorkflowRequest:
    kind: RequestKind
    city: str | None = None
    question: str | None = None
    constraints: tuple[tuple[str, str], ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "city": self.city,
            "question": self.question,
            "constraints": dict(self.constraints),
        }


@dataclass(frozen=True)
class WorkflowStage:
    agent: AgentRole
    consumes: tuple[AgentRole, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {"agent": self.agent.value, "consumes": [a.value for a in self.consumes]}


@dataclass(frozen=True)
class WorkflowPlan:
    request: WorkflowRequest
    stages: tuple[WorkflowStage, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"request": self.request.to_dict(), "stages": [s.to_dict() for s in self.stages]}
