from .fields import (
    FIELD_NAMES,
    SECTOR_ALIASES,
    ExpectedFields,
    FieldStatus,
    NumericExpectation,
    RegionExpectation,
    SectorExpectation,
    extract_fields,
)
from .review import (
    REVIEW_METRICS,
    ExpertReview,
    ReviewStore,
    record_expert_review,
    render_review_table,
)
from .scoring import QueryScore, score_answer
from .suite import AggregateReport, TestQuery, load_testset, render_table, run_suite

__all__ = [
    "AggregateReport",
    "ExpectedFields",
    "ExpertReview",
    "FIELD_NAMES",
    "FieldStatus",
    "NumericExpectation",
    "QueryScore",
    "REVIEW_METRICS",
    "RegionExpectation",
    "ReviewStore",
    "SECTOR_ALIASES",
    "SectorExpectation",
    "TestQuery",
    "extract_fields",
    "load_testset",
    "record_expert_review",
    "render_review_table",
    "render_table",
    "run_suite",
    "score_answer",
]
