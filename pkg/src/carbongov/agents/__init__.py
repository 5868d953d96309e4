from .backends import (
    GenerationBackend,
    GroundedPrompt,
    NO_EVIDENCE_TEXT,
    RemoteChatBackend,
    TemplateBackend,
    generate_structured,
)
from .conflicts import DEFAULT_REL_TOL, detect_numeric_conflicts
from .assessment import classify_trend, run_assessment
from .numbers import fact_row_key_numbers, numbers_in_answer, verify_key_number
from .orchestrator import WorkflowResult, execute_workflow
from .planning import run_planning
from .qa import run_evidence_qa
from .report import run_report, validate_numeric_claims
from .retrieval import Retriever
from .router import route_request
from .types import (
    AgentRole,
    AssessmentDiagnostics,
    CITATION_RE,
    EvidenceItem,
    FlagKind,
    GovernancePlan,
    KeyNumber,
    PLAN_SECTION_ORDER,
    PlanGoal,
    PlanSection,
    QAAnswer,
    Recommendation,
    REPORT_SECTION_ORDER,
    ReportDocument,
    ReportSection,
    ReportSectionContent,
    RequestKind,
    SectorShare,
    TrendStage,
    UncertaintyFlag,
    WorkflowPlan,
    WorkflowRequest,
    WorkflowStage,
    citation_ids,
)

__all__ = [
    "AgentRole", "AssessmentDiagnostics", "CITATION_RE", "DEFAULT_REL_TOL",
    "EvidenceItem", "FlagKind", "GenerationBackend", "GovernancePlan",
    "GroundedPrompt", "KeyNumber", "NO_EVIDENCE_TEXT", "PLAN_SECTION_ORDER",
    "PlanGoal", "PlanSection", "QAAnswer", "Recommendation",
    "REPORT_SECTION_ORDER", "RemoteChatBackend", "ReportDocument",
    "ReportSection", "ReportSectionContent", "RequestKind", "Retriever",
    "SectorShare", "TemplateBackend", "TrendStage", "UncertaintyFlag",
    "WorkflowPlan", "WorkflowRequest", "WorkflowResult", "WorkflowStage",
    "citation_ids", "classify_trend", "detect_numeric_conflicts",
    "execute_workflow", "fact_row_key_numbers", "generate_structured",
    "numbers_in_answer", "route_request", "run_assessment", "run_evidence_qa",
    "run_planning", "run_report", "validate_numeric_claims",
    "verify_key_number",
]
