"""Planning agent: turn diagnostics into a five-section governance plan."""
from __future__ import annotations

from ..corpus import Sector, SubCorpus
from ..errors import MissingCity
from ..index import MetadataFilter, RetrievalConfig
from .backends import GenerationBackend, GroundedPrompt, generate_structured, recommendations_validator
from .retrieval import Retriever
from .types import (
    AssessmentDiagnostics,
    FlagKind,
    GovernancePlan,
    PLAN_SECTION_ORDER,
    PlanGoal,
    PlanSection,
    Recommendation,
    UncertaintyFlag,
    citation_ids,
)

PLAN_INSTRUCTIONS = (
    "Propose concrete governance measures for the section, grounded only in "
    "the evidence excerpts. Tag each measure with a sector and the chunk ids "
    "it draws on. Keep measures qualitative: no numeric values; quantified "
    "targets belong elsewhere in the plan."
)

SECTION_THEMES: dict[PlanSection, str] = {
    PlanSection.SpatialInterventions:
        "spatial planning land use transit corridors compact urban form",
    PlanSection.InfrastructureUpgrades:
        "infrastructure upgrades electrification rail port grid retrofit charging",
    PlanSection.PolicyMechanisms:
        "policy mechanisms regulation standards permits implementation plans",
    PlanSection.MarketIncentives:
        "market incentives subsidies carbon trading pricing green finance",
    PlanSection.MonitoringEvaluation:
        "monitoring evaluation data platform carbon accounting verification",
}

# planning draws on narrative sources, not the emission inventory itself
_PLANNING_CORPORA = frozenset({SubCorpus.Policy, SubCorpus.Case, SubCorpus.Academic})


def run_planning(
    diag: AssessmentDiagnostics,
    retrieval: Retriever,
    gen: GenerationBackend,
    cfg: RetrievalConfig | None = None,
) -> GovernancePlan:
    if not diag.city:
        raise MissingCity("planning needs diagnostics for a concrete city")

    # dominant sectors steer the query text; a hard sector filter would drop
    # prose chunks, which carry no sector tag
    emphasis = " ".join(s.value for s in diag.key_emitters)

    sections: dict[PlanSection, list[Recommendation]] = {}
    flags: list[UncertaintyFlag] = []
    for section in PLAN_SECTION_ORDER:
        theme = SECTION_THEMES[section]
        flt = MetadataFilter(sub_corpora=_PLANNING_CORPORA)
        evidence = retrieval.retrieve(f"{diag.city} {emphasis} {theme}".strip(), cfg, flt)
        recs: list[Recommendation] = []
        if evidence:
            prompt = GroundedPrompt(
                PLAN_INSTRUCTIONS,
                f"Section: {section.value}. City: {diag.city}. Theme: {theme}.",
                tuple(evidence),
                "recommendations",
            )
            data = generate_structured(
                gen, prompt, recommendations_validator({e.chunk_id for e in evidence})
            )
            for rec in data["recommendations"]:
                if not rec["chunk_ids"]:
                    continue
                recs.append(Recommendation(
                    text=rec["text"],
                    sector=Sector(rec["sector"]) if rec["sector"] else None,
                    chunk_ids=tuple(rec["chunk_ids"]),
                ))
        sections[section] = recs
        if not recs:
            flags.append(UncertaintyFlag(
                FlagKind.InsufficientEvidence,
                f"{section.value}: no evidence-supported measures found",
            ))

    goals: list[PlanGoal] = []
    if diag.peaking_year is not None:
        markers = "".join(f" [{cid}]" for cid in sorted(citation_ids(diag.peaking_status)))
        goals.append(PlanGoal(
            text=f"Peak citywide CO2 emissions around {diag.peaking_year}{markers}",
            indicator="total CO2 emissions",
            target_year=diag.peaking_year,
        ))

    plan = GovernancePlan(city=diag.city, goals=goals, sections=sections, flags=flags)
    plan.validate()
    return plan
