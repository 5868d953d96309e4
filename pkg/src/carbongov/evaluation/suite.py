"""Suite execution and the aggregate comparison table."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence

from ..agents import QAAnswer
from ..corpus.store import read_interchange
from ..errors import BackendUnavailable, NoQueries
from .fields import FIELD_NAMES, ExpectedFields, FieldStatus, extract_fields
from .scoring import QueryScore, score_answer


@dataclass(frozen=True)
class TestQuery:
    __test__ = False  # not a pytest class, despite the name

    id: str
    category: str
    question: str
    expected: ExpectedFields

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "TestQuery":
        expected = ExpectedFields.from_dict(d.get("expected") or {})
        query = cls(id=d["id"], category=d.get("category", ""),
                    question=d["question"], expected=expected)
        if all(getattr(expected, f) is None for f in FIELD_NAMES):
            from ..errors import NoRequiredFields
            raise NoRequiredFields(f"test query {query.id!r} expects no fields")
        return query

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.id, "category": self.category,
                "question": self.question, "expected": self.expected.to_dict()}


def load_testset(path: str | Path) -> list[TestQuery]:
    return [TestQuery.from_dict(record) for record in read_interchange(path)]


@dataclass
class AggregateReport:
    setting: str
    rag_enabled: bool
    n: int
    avg_score: float
    avg_docs: float
    rates: dict[str, float | None]
    scores: list[QueryScore] = field(default_factory=list)
    failures: list[tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "setting": self.setting,
            "rag_enabled": self.rag_enabled,
            "n": self.n,
            "avg_score": self.avg_score,
            "avg_docs": self.avg_docs,
            "rates": dict(self.rates),
            "scores": [s.to_dict() for s in self.scores],
            "failures": [list(f) for f in self.failures],
        }


def run_suite(
    testset: Sequence[TestQuery],
    answer_fn: Callable[[str], QAAnswer],
    rag_enabled: bool,
    setting: str,
) -> AggregateReport:
    """Score every query and aggregate; a backend failure scores the query
    zero rather than aborting the suite."""
    if not testset:
        raise NoQueries("the testset is empty")

    scores: list[QueryScore] = []
    failures: list[tuple[str, str]] = []
    for query in sorted(testset, key=lambda q: q.id):
        try:
            answer = answer_fn(query.question)
        except BackendUnavailable as exc:
            failures.append((query.id, str(exc)))
            detections = {
                f: (FieldStatus.Missed if getattr(query.expected, f) is not None
                    else FieldStatus.NotRequired)
                for f in FIELD_NAMES
            }
            scores.append(score_answer(query.id, detections, docs_retrieved=0))
            continue
        detections = extract_fields(answer, query.expected)
        scores.append(score_answer(query.id, detections, len(answer.evidence)))

    n = len(scores)
    rates: dict[str, float | None] = {}
    for f in FIELD_NAMES:
        requiring = [qs for qs in scores if qs.statuses[f] is not FieldStatus.NotRequired]
        if not requiring:
            rates[f] = None
        else:
            detected = sum(1 for qs in requiring
                           if qs.statuses[f] is not FieldStatus.Missed)
            rates[f] = detected / len(requiring)

    return AggregateReport(
        setting=setting,
        rag_enabled=rag_enabled,
        n=n,
        avg_score=sum(qs.score for qs in scores) / n,
        avg_docs=sum(qs.docs_retrieved for qs in scores) / n,
        rates=rates,
        scores=scores,
        failures=failures,
    )


_COLUMNS = ("Setting", "RAG", "N", "Avg. Score", "Avg. Docs",
            "Region", "Year", "Industry", "Numeric")
_RATE_KEYS = {"Region": "region", "Year": "year",
              "Industry": "sector", "Numeric": "numeric"}


def _rate_cell(rate: float | None) -> str:
    return "--" if rate is None else f"{100.0 * rate:.1f}%"


def render_table(reports: Sequence[AggregateReport]) -> str:
    """Aligned plain-text comparison: one row per report, columns shared."""
    rows = []
    for r in reports:
        rows.append((
            r.setting,
            "on" if r.rag_enabled else "off",
            str(r.n),
            f"{r.avg_score:.1f}",
            f"{r.avg_docs:.1f}",
            _rate_cell(r.rates.get("region")),
            _rate_cell(r.rates.get("year")),
            _rate_cell(r.rates.get("sector")),
            _rate_cell(r.rates.get("numeric")),
        ))
    widths = [max(len(_COLUMNS[i]), *(len(row[i]) for row in rows)) if rows
              else len(_COLUMNS[i]) for i in range(len(_COLUMNS))]

    def fmt(cells, pad=" "):
        parts = [cells[0].ljust(widths[0])]
        parts += [cells[i].rjust(widths[i]) for i in range(1, len(cells))]
        return (pad * 2).join(parts).rstrip()

    lines = [fmt(_COLUMNS), fmt(tuple("-" * w for w in widths))]
    lines += [fmt(row) for row in rows]
    return "\n".join(lines)
