"""Request routing: which agents run, in what order, consuming what."""
from __future__ import annotations

from ..errors import InvalidRequest, MissingCity
from .types import AgentRole, RequestKind, WorkflowPlan, WorkflowRequest, WorkflowStage

_PIPELINES: dict[RequestKind, tuple[WorkflowStage, ...]] = {
    RequestKind.FactQuery: (
        WorkflowStage(AgentRole.EvidenceQA),
    ),
    RequestKind.Assess: (
        WorkflowStage(AgentRole.Assessment),
    ),
    RequestKind.Plan: (
        WorkflowStage(AgentRole.Assessment),
        WorkflowStage(AgentRole.Planning, consumes=(AgentRole.Assessment,)),
    ),
    RequestKind.Report: (
        WorkflowStage(AgentRole.Assessment),
        WorkflowStage(AgentRole.Planning, consumes=(AgentRole.Assessment,)),
        WorkflowStage(AgentRole.Report, consumes=(AgentRole.Assessment, AgentRole.Planning)),
    ),
}


def route_request(req: WorkflowRequest) -> WorkflowPlan:
    if req.kind is RequestKind.FactQuery:
        if not (req.question and req.question.strip()):
            raise InvalidRequest("a fact query needs a question")
    elif not (req.city and req.city.strip()):
        raise MissingCity(f"{req.kind.value} requests need a city")
    return WorkflowPlan(request=req, stages=_PIPELINES[req.kind])
