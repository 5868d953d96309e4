"""Request and response bodies for the HTTP surface."""
from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field

from ..agents import RequestKind, WorkflowRequest
from ..corpus import Sector, SubCorpus
from ..errors import InvalidRequest
from ..index import MetadataFilter


class FilterSpec(BaseModel):
    """Conjunctive retrieval filter; omitted fields match everything."""

    city: Optional[str] = None
    year_from: Optional[int] = None
    year_to: Optional[int] = None
    sectors: Optional[list[str]] = None
    sub_corpora: Optional[list[str]] = None

    def to_filter(self) -> MetadataFilter:
        if (self.year_from is None) != (self.year_to is None):
            raise InvalidRequest("year_from and year_to must be given together")
        year_range = None
        if self.year_from is not None and self.year_to is not None:
            year_range = (self.year_from, self.year_to)
        try:
            sectors = frozenset(Sector(s) for s in self.sectors) if self.sectors else None
            subs = frozenset(SubCorpus(s) for s in self.sub_corpora) if self.sub_corpora else None
        except ValueError as exc:
            raise InvalidRequest(str(exc)) from None
        return MetadataFilter(
            city=self.city, year_range=year_range, sectors=sectors, sub_corpora=subs)


class QueryRequest(BaseModel):
    question: str
    k: Optional[int] = Field(default=None, ge=1)
    filter: FilterSpec = Field(default_factory=FilterSpec)


class WorkflowLaunch(BaseModel):
    kind: str
    city: Optional[str] = None
    question: Optional[str] = None
    constraints: dict[str, str] = Field(default_factory=dict)

    def to_request(self) -> WorkflowRequest:
        try:
            kind = RequestKind(self.kind)
        except ValueError:
            raise InvalidRequest(f"unknown workflow kind {self.kind!r}") from None
        return WorkflowRequest(
            kind=kind,
            city=self.city,
            question=self.question,
            constraints=tuple(sorted(self.constraints.items())),
        )


class JobLaunched(BaseModel):
    job_id: str


class EvidenceResponse(BaseModel):
    chunk_id: str
    text: str
    char_span: tuple[int, int]
    metadata: dict[str, Any]
    doc_id: str
    doc_title: str
    sub_corpus: Optional[str] = None


class EvalRunRequest(BaseModel):
    rag: bool = True
    setting: Optional[str] = None
    testset_path: Optional[str] = None


class EvalReportSummary(BaseModel):
    report_id: str
    created_at: str
    setting: str
    rag: bool
    n: int
    avg_score: float
