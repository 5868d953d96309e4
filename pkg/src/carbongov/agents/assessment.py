"""Assessment agent: diagnose a city's emission status from the corpus.

Runs a fixed probe battery (totals by year, sector shares, peaking
statements, plus one unfiltered consistency probe) and fills the
diagnostics from fact rows found in the retrieved chunks.
"""
from __future__ import annotations

import re
from typing import Mapping

from ..corpus import FactRow, Sector, SubCorpus, fact_rows_in
from ..errors import MissingCity
from ..index import MetadataFilter, RetrievalConfig
from ..numutil import canonical_unit
from .backends import GenerationBackend, GroundedPrompt, citation_closure_validator, generate_structured, split_sentences
from .conflicts import DEFAULT_REL_TOL, detect_numeric_conflicts
from .numbers import fact_row_key_numbers, verify_key_number
from .retrieval import Retriever
from .types import (
    AssessmentDiagnostics,
    EvidenceItem,
    FlagKind,
    KeyNumber,
    SectorShare,
    TrendStage,
    UncertaintyFlag,
)

STATEMENT_INSTRUCTIONS = (
    "Restate the draft as one clear sentence. Keep every number and every "
    "citation marker exactly as written."
)

# share of total emissions a sector needs to count as a key emitter
KEY_EMITTER_FLOOR = 0.10

_YEAR_RE = re.compile(r"(?<![\d.])(19\d\d|20\d\d)(?!\d)")
_PEAK_RE = re.compile(r"\bpeak\w*", re.IGNORECASE)


def classify_trend(series: Mapping[int, float]) -> TrendStage:
    """Stage the emission trajectory over the most recent five years.

    Rule order matters: Declining beats Peaked beats Plateau beats Rising;
    fewer than three data points is Unknown.
    """
    if len(series) < 3:
        return TrendStage.Unknown
    years = sorted(series)[-5:]
    values = [series[y] for y in years]
    vmax = max(values)
    last_year, last = years[-1], values[-1]
    if last < 0.98 * vmax:
        return TrendStage.Declining
    peak_year = max(y for y in years if series[y] == vmax)
    if last_year - peak_year >= 2:
        return TrendStage.Peaked
    tail = values[-3:]
    if all(prev != 0 and abs(cur / prev - 1.0) <= 0.01 for prev, cur in zip(tail, tail[1:])):
        return TrendStage.Plateau
    return TrendStage.Rising


def _city_rows(evidence: list[EvidenceItem], city: str) -> list[tuple[EvidenceItem, FactRow]]:
    pairs = []
    fold = city.casefold()
    for item in evidence:
        for row in fact_rows_in(item.excerpt):
            if row.city and row.city.casefold() == fold:
                pairs.append((item, row))
    return pairs


def _merge(*batches: list[EvidenceItem]) -> list[EvidenceItem]:
    seen: set[str] = set()
    merged = []
    for batch in batches:
        for item in batch:
            if item.chunk_id not in seen:
                seen.add(item.chunk_id)
                merged.append(item)
    return merged


def run_assessment(
    city: str,
    retrieval: Retriever,
    gen: GenerationBackend,
    cfg: RetrievalConfig | None = None,
    rel_tol: float = DEFAULT_REL_TOL,
) -> AssessmentDiagnostics:
    if not city or not city.strip():
        raise MissingCity("assessment needs a city")
    city = city.strip()

    emissions_flt = MetadataFilter(city=city, sub_corpora=frozenset({SubCorpus.Emissions}))
    policy_flt = MetadataFilter(city=city, sub_corpora=frozenset({SubCorpus.Policy}))
    totals_ev = retrieval.retrieve(f"{city} total CO2 emissions by year", cfg, emissions_flt)
    shares_ev = retrieval.retrieve(f"{city} share of total CO2 emissions by sector", cfg, emissions_flt)
    peaking_ev = retrieval.retrieve(f"{city} carbon peaking target year", cfg, policy_flt)
    # unfiltered probe so sources outside the emissions inventory can
    # contradict it and be flagged
    consistency_ev = retrieval.retrieve(f"{city} total CO2 emissions", cfg, MetadataFilter(city=city))

    evidence = _merge(totals_ev, shares_ev, peaking_ev, consistency_ev)
    flags: list[UncertaintyFlag] = []

    # totals series comes from the emissions inventory alone
    series: dict[int, tuple[float, EvidenceItem, FactRow]] = {}
    for item, row in _city_rows(totals_ev, city):
        if row.year is None or "total" not in row.indicator.casefold():
            continue
        if canonical_unit(row.unit) != "Mt CO2":
            continue
        series.setdefault(row.year, (row.value, item, row))

    total_emissions: KeyNumber | None = None
    time_span = None
    if series:
        years = sorted(series)
        time_span = (years[0], years[-1])
        value, item, row = series[years[-1]]
        total_emissions = KeyNumber(
            value=value,
            unit=canonical_unit(row.unit),
            indicator=row.indicator,
            source_chunk_id=item.chunk_id,
            city=row.city,
            year=row.year,
        )
        if not verify_key_number(total_emissions, item.excerpt):
            total_emissions = None
    if total_emissions is None:
        flags.append(UncertaintyFlag(
            FlagKind.InsufficientEvidence, f"no total emission figures found for {city}"))

    trend = classify_trend({y: v for y, (v, _, _) in series.items()})

    # per-sector shares, most recent year available
    share_rows = [
        (item, row)
        for item, row in _city_rows(shares_ev, city)
        if canonical_unit(row.unit) == "%"
        and "share" in row.indicator.casefold()
        and row.sector is not None
        and row.sector is not Sector.CrossCutting
    ]
    share_year = max((row.year for _, row in share_rows if row.year is not None), default=None)
    sector_shares: dict[Sector, SectorShare] = {}
    for item, row in share_rows:
        if row.year != share_year:
            continue
        share = row.value / 100.0
        if not 0.0 <= share <= 1.0 or row.sector in sector_shares:
            continue
        sector_shares[row.sector] = SectorShare(share=share, chunk_ids=(item.chunk_id,))
    if not sector_shares:
        flags.append(UncertaintyFlag(
            FlagKind.InsufficientEvidence, f"no sector share breakdown found for {city}"))

    key_emitters = [
        sector
        for sector, ss in sorted(
            sector_shares.items(), key=lambda kv: (-kv[1].share, kv[0].value)
        )
        if ss.share >= KEY_EMITTER_FLOOR
    ]

    # peaking statement: first sentence mentioning a peak, latest year in it
    peaking_year = None
    peaking_status = f"No peaking commitment found in the indexed policies for {city}."
    peak_hit = None
    for item in peaking_ev:
        for sent in split_sentences(item.excerpt):
            if _PEAK_RE.search(sent):
                years_in = [int(y) for y in _YEAR_RE.findall(sent) if 2015 <= int(y) <= 2060]
                if years_in:
                    peak_hit = (item, max(years_in))
                    break
        if peak_hit:
            break
    if peak_hit:
        item, peaking_year = peak_hit
        draft = f"{city} aims to peak carbon emissions around {peaking_year} [{item.chunk_id}]."
        prompt = GroundedPrompt(
            STATEMENT_INSTRUCTIONS,
            f"City: {city}\nDraft: {draft}",
            tuple(peaking_ev),
            "statement",
        )
        data = generate_structured(
            gen, prompt,
            citation_closure_validator({e.chunk_id for e in peaking_ev}, "text"),
        )
        peaking_status = data["text"]
    else:
        flags.append(UncertaintyFlag(
            FlagKind.InsufficientEvidence, f"no peaking statement found for {city}"))

    flags.extend(detect_numeric_conflicts(
        fact_row_key_numbers(evidence),
        rel_tol=rel_tol,
        sub_corpus_by_chunk={e.chunk_id: e.metadata.sub_corpus for e in evidence},
    ))

    diag = AssessmentDiagnostics(
        city=city,
        total_emissions=total_emissions,
        sector_shares=sector_shares,
        trend_stage=trend,
        peaking_status=peaking_status,
        peaking_year=peaking_year,
        key_emitters=key_emitters,
        time_span=time_span,
        evidence=evidence,
        flags=flags,
    )
    diag.validate()
    return diag
