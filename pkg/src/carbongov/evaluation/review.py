"""Append-only expert review records and their tabular rendering.

The four rubric metrics are fixed; scores are 1..5 integers with free-text
notes. Reviews attach to an artifact id (a stored report or answer) and are
never rewritten in place.
"""
from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping

from ..errors import IoFailure, ScoreOutOfRange

REVIEW_METRICS: tuple[str, ...] = ("Relevance", "Coverage", "Coherence", "Grounding")


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class ExpertReview:
    artifact_id: str
    reviewer: str
    scores: Mapping[str, int]
    notes: Mapping[str, str] = field(default_factory=dict)
    timestamp: str = field(default_factory=_utc_now)
    review_id: str = ""

    def __post_init__(self):
        if set(self.scores) != set(REVIEW_METRICS):
            raise ScoreOutOfRange(
                f"a review scores exactly the metrics {list(REVIEW_METRICS)}, "
                f"got {sorted(self.scores)}")
        for metric, score in self.scores.items():
            if not isinstance(score, int) or not 1 <= score <= 5:
                raise ScoreOutOfRange(f"{metric} score must be an integer in 1..5, got {score!r}")
        unknown = set(self.notes) - set(REVIEW_METRICS)
        if unknown:
            raise ScoreOutOfRange(f"notes attached to unknown metrics: {sorted(unknown)}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "review_id": self.review_id,
            "artifact_id": self.artifact_id,
            "reviewer": self.reviewer,
            "scores": dict(self.scores),
            "notes": dict(self.notes),
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "ExpertReview":
        return cls(
            artifact_id=d["artifact_id"],
            reviewer=d["reviewer"],
            scores={m: int(v) for m, v in d["scores"].items()},
            notes=dict(d.get("notes", {})),
            timestamp=d.get("timestamp", ""),
            review_id=d.get("review_id", ""),
        )


class ReviewStore:
    """JSONL-backed review log; loads what exists, appends one line per add."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._reviews: list[ExpertReview] = []
        if self.path.exists():
            try:
                with open(self.path, encoding="utf-8") as fh:
                    for line in fh:
                        if line.strip():
                            self._reviews.append(ExpertReview.from_dict(json.loads(line)))
            except OSError as exc:
                raise IoFailure(f"cannot read review log {self.path}: {exc}") from exc

    def __len__(self) -> int:
        return len(self._reviews)

    def add(self, review: ExpertReview) -> str:
        review_id = review.review_id or f"rev-{uuid.uuid4().hex[:12]}"
        stored = ExpertReview(
            artifact_id=review.artifact_id,
            reviewer=review.reviewer,
            scores=review.scores,
            notes=review.notes,
            timestamp=review.timestamp,
            review_id=review_id,
        )
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(stored.to_dict(), ensure_ascii=False) + "\n")
        except OSError as exc:
            raise IoFailure(f"cannot append to review log {self.path}: {exc}") from exc
        self._reviews.append(stored)
        return review_id

    def for_artifact(self, artifact_id: str) -> list[ExpertReview]:
        return [r for r in self._reviews if r.artifact_id == artifact_id]


def record_expert_review(review: ExpertReview, store: ReviewStore) -> str:
    return store.add(review)


def render_review_table(store: ReviewStore, artifact_id: str) -> str:
    """Metric / score / notes rows for every review of one artifact."""
    reviews = store.for_artifact(artifact_id)
    if not reviews:
        return f"No reviews recorded for {artifact_id}."
    blocks = []
    for r in reviews:
        lines = [f"Reviewer: {r.reviewer}  ({r.timestamp})  [{r.review_id}]"]
        width = max(len(m) for m in REVIEW_METRICS)
        for metric in REVIEW_METRICS:
            note = r.notes.get(metric, "")
            row = f"  {metric.ljust(width)}  {r.scores[metric]}"
            lines.append(f"{row}  {note}".rstrip())
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)
