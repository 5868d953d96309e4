"""Executes routed workflows stage by stage."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from ..index import RetrievalConfig
from .assessment import run_assessment
from .backends import GenerationBackend
from .conflicts import DEFAULT_REL_TOL
from .planning import run_planning
from .qa import run_evidence_qa
from .report import run_report
from .retrieval import Retriever
from .router import route_request
from .types import AgentRole, WorkflowPlan, WorkflowRequest


@dataclass
class WorkflowResult:
    plan: WorkflowPlan
    outputs: dict[AgentRole, Any] = field(default_factory=dict)

    @property
    def final(self) -> Any:
        last = self.plan.stages[-1].agent
        return self.outputs[last]

    def to_dict(self) -> dict[str, Any]:
        return {
            "plan": self.plan.to_dict(),
            "outputs": {role.value: out.to_dict() for role, out in self.outputs.items()},
        }


def execute_workflow(
    req: WorkflowRequest,
    retrieval: Retriever,
    gen: GenerationBackend,
    cfg: RetrievalConfig | None = None,
    rel_tol: float = DEFAULT_REL_TOL,
    resolve_title: Callable[[str], str] | None = None,
) -> WorkflowResult:
    wplan = route_request(req)
    result = WorkflowResult(plan=wplan)
    for stage in wplan.stages:
        if stage.agent is AgentRole.EvidenceQA:
            out = run_evidence_qa(req.question or "", retrieval, gen, cfg, rel_tol=rel_tol)
        elif stage.agent is AgentRole.Assessment:
            out = run_assessment(req.city or "", retrieval, gen, cfg, rel_tol=rel_tol)
        elif stage.agent is AgentRole.Planning:
            out = run_planning(result.outputs[AgentRole.Assessment], retrieval, gen, cfg)
        else:
            out = run_report(
                result.outputs[AgentRole.Assessment],
                result.outputs[AgentRole.Planning],
                gen,
                resolve_title=resolve_title or retrieval.doc_title_for_chunk,
            )
        result.outputs[stage.agent] = out
    return result
