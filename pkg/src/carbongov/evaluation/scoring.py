"""Per-query scoring from field detection statuses."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from ..errors import NoRequiredFields
from .fields import FIELD_NAMES, FieldStatus

_CREDIT = {
    FieldStatus.DetectedGrounded: 1.0,
    FieldStatus.DetectedUngrounded: 0.5,
    FieldStatus.Missed: 0.0,
}


@dataclass(frozen=True)
class QueryScore:
    query_id: str
    statuses: Mapping[str, FieldStatus]
    docs_retrieved: int
    score: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "query_id": self.query_id,
            "statuses": {f: s.value for f, s in self.statuses.items()},
            "docs_retrieved": self.docs_retrieved,
            "score": self.score,
        }


def score_answer(
    query_id: str,
    detections: Mapping[str, FieldStatus],
    docs_retrieved: int,
) -> QueryScore:
    """score = 100 x (sum of field credits) / (number of required fields),
    with credit 1.0 grounded, 0.5 ungrounded, 0 missed."""
    statuses = {f: detections.get(f, FieldStatus.NotRequired) for f in FIELD_NAMES}
    required = [s for s in statuses.values() if s is not FieldStatus.NotRequired]
    if not required:
        raise NoRequiredFields(f"query {query_id!r} requires no fields, nothing to score")
    score = 100.0 * sum(_CREDIT[s] for s in required) / len(required)
    return QueryScore(query_id=query_id, statuses=statuses,
                      docs_retrieved=docs_retrieved, score=score)
