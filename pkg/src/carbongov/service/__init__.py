"""HTTP service wrapping the engine."""
from .app import EvalReportStore, create_app
from .jobs import JobRecord, JobStatus, JobStore
from .models import (
    EvalReportSummary,
    EvalRunRequest,
    EvidenceResponse,
    FilterSpec,
    JobLaunched,
    QueryRequest,
    WorkflowLaunch,
)

__all__ = [
    "EvalReportStore",
    "EvalReportSummary",
    "EvalRunRequest",
    "EvidenceResponse",
    "FilterSpec",
    "JobLaunched",
    "JobRecord",
    "JobStatus",
    "JobStore",
    "QueryRequest",
    "WorkflowLaunch",
    "create_app",
]
