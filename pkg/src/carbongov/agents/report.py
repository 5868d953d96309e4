"""Report agent: integrate diagnostics and plan into a fixed-shape document.

The narrative may only state numbers that trace back to KeyNumbers from the
upstream stages; the mechanical audit for that lives here too so the test
suite and the service can re-run it on any document.
"""
from __future__ import annotations

import re
from typing import Callable, Sequence

from ..errors import CityMismatch
from ..numutil import extract_numbers, format_value, values_close
from .backends import GenerationBackend, GroundedPrompt, generate_structured
from .numbers import fact_row_key_numbers
from .types import (
    CITATION_RE,
    AssessmentDiagnostics,
    GovernancePlan,
    KeyNumber,
    PLAN_SECTION_ORDER,
    PlanSection,
    REPORT_SECTION_ORDER,
    ReportDocument,
    ReportSection,
    ReportSectionContent,
    citation_ids,
)

REPORT_INSTRUCTIONS = (
    "Polish the draft paragraphs. Keep every number, citation marker, and "
    "line break exactly as written; change wording only."
)

_YEAR_TOKEN = re.compile(r"\d{4}")


def validate_numeric_claims(doc: ReportDocument, allowed: Sequence[KeyNumber]) -> None:
    """Every number in the narrative must restate an upstream KeyNumber.

    Bare four-digit year tokens inside the plausible range pass as temporal
    references; everything else needs a value (and unit, when present)
    match. Citation markers are stripped first since chunk ids end in
    digits.
    """
    for section in doc.sections:
        if section.heading is ReportSection.Sources:
            continue
        for para in section.paragraphs:
            text = CITATION_RE.sub(" ", para)
            for m in extract_numbers(text):
                token = text[m.start:m.end]
                is_year = (
                    m.unit == ""
                    and _YEAR_TOKEN.fullmatch(token)
                    and 1900 <= m.value <= 2100
                )
                if is_year:
                    continue
                ok = any(
                    values_close(m.value, kn.value, 1e-9)
                    and (m.unit == "" or m.unit == kn.unit)
                    for kn in allowed
                )
                if not ok:
                    raise ValueError(
                        f"number {token!r} in section {section.heading.value} "
                        "does not trace to any key number"
                    )


def _markers(chunk_ids: Sequence[str]) -> str:
    return "".join(f" [{cid}]" for cid in chunk_ids)


def _status_paragraphs(diag: AssessmentDiagnostics) -> list[str]:
    out = []
    if diag.total_emissions is not None:
        kn = diag.total_emissions
        when = f" in {kn.year}" if kn.year else ""
        out.append(
            f"Total CO2 emissions for {diag.city} reached "
            f"{format_value(kn.value)} {kn.unit}{when}{_markers([kn.source_chunk_id])}."
        )
    else:
        out.append(f"No citywide emission total could be established for {diag.city}.")
    if diag.time_span and diag.total_emissions:
        lo, hi = diag.time_span
        out.append(
            f"Across {lo} to {hi} the trajectory is classified as "
            f"{diag.trend_stage.value}{_markers([diag.total_emissions.source_chunk_id])}."
        )
    else:
        out.append(f"The emission trajectory is classified as {diag.trend_stage.value}.")
    if diag.sector_shares:
        parts = []
        for sector, ss in sorted(diag.sector_shares.items(), key=lambda kv: (-kv[1].share, kv[0].value)):
            pct = format_value(round(ss.share * 100, 6))
            parts.append(f"{sector.value} {pct} %{_markers(ss.chunk_ids)}")
        out.append("Sector shares of the total: " + ", ".join(parts) + ".")
    out.append(diag.peaking_status)
    return out


def _problem_paragraphs(diag: AssessmentDiagnostics) -> list[str]:
    out = []
    for sector in diag.key_emitters[:2]:
        ss = diag.sector_shares[sector]
        pct = format_value(round(ss.share * 100, 6))
        out.append(
            f"Emissions are concentrated: {sector.value} alone accounts for "
            f"{pct} % of the total{_markers(ss.chunk_ids)}."
        )
    for flag in diag.flags:
        out.append(f"{flag.kind.value}: {flag.message}{_markers(flag.involved_chunk_ids)}.")
    if not out:
        out.append("No structural problems or data gaps were flagged.")
    return out


def _target_paragraphs(plan: GovernancePlan) -> list[str]:
    if not plan.goals:
        return ["No quantified targets could be grounded in the available evidence."]
    out = []
    for goal in plan.goals:
        year = f", target year {goal.target_year}" if goal.target_year else ""
        out.append(f"{goal.text} (indicator: {goal.indicator}{year}).")
    return out


def _intervention_paragraphs(plan: GovernancePlan, which: Sequence[PlanSection]) -> list[str]:
    out = []
    for section in which:
        recs = plan.sections.get(section, [])
        if recs:
            body = "; ".join(f"{rec.text}{_markers(rec.chunk_ids)}" for rec in recs)
            out.append(f"{section.value}: {body}.")
        else:
            out.append(f"{section.value}: no evidence-supported measures identified.")
    return out


def run_report(
    diag: AssessmentDiagnostics,
    plan: GovernancePlan,
    gen: GenerationBackend,
    resolve_title: Callable[[str], str] | None = None,
) -> ReportDocument:
    if diag.city != plan.city:
        raise CityMismatch(f"diagnostics are for {diag.city!r}, plan for {plan.city!r}")

    drafts: dict[ReportSection, list[str]] = {
        ReportSection.Status: _status_paragraphs(diag),
        ReportSection.Problems: _problem_paragraphs(diag),
        ReportSection.Targets: _target_paragraphs(plan),
        ReportSection.Interventions: _intervention_paragraphs(plan, PLAN_SECTION_ORDER[:4]),
        ReportSection.MonitoringEvaluation: _intervention_paragraphs(
            plan, [PlanSection.MonitoringEvaluation]),
    }

    known_ids = {e.chunk_id for e in diag.evidence}
    for recs in plan.sections.values():
        for rec in recs:
            known_ids.update(rec.chunk_ids)

    def closure(data: dict) -> None:
        loose = citation_ids(data["text"]) - known_ids
        if loose:
            raise ValueError(f"citations not traceable to any stage: {sorted(loose)}")

    sections = []
    for heading in REPORT_SECTION_ORDER[:-1]:
        draft = "\n".join(drafts[heading])
        prompt = GroundedPrompt(
            REPORT_INSTRUCTIONS,
            f"Section: {heading.value}\nDraft:\n{draft}",
            (),
            "statement",
        )
        text = generate_structured(gen, prompt, closure)["text"]
        sections.append(ReportSectionContent(
            heading=heading,
            paragraphs=[line for line in text.split("\n") if line.strip()],
        ))

    cited = sorted(set().union(*(citation_ids(p) for s in sections for p in s.paragraphs)) or set())
    register = [(cid, resolve_title(cid) if resolve_title else "(untitled source)") for cid in cited]
    sections.append(ReportSectionContent(
        heading=ReportSection.Sources,
        paragraphs=[f"[{cid}] {title}" for cid, title in register] or ["No sources were cited."],
    ))

    doc = ReportDocument(
        title=f"Carbon Governance Action Plan: {diag.city}",
        city=diag.city,
        sections=sections,
        source_register=register,
    )
    doc.validate()

    allowed = list(fact_row_key_numbers(diag.evidence))
    if diag.total_emissions is not None:
        allowed.append(diag.total_emissions)
    validate_numeric_claims(doc, allowed)
    return doc
