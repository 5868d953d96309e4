"""End-to-end acceptance checks for the whole engine.

Each test covers one release criterion and prints a single summary line with
the measured values, so a verbose run reads as a checklist.
"""
import json
import math
import random
import time
from collections import Counter

import numpy as np
import pytest

from carbongov.agents import (
    AgentRole,
    FlagKind,
    RequestKind,
    WorkflowRequest,
    citation_ids,
    verify_key_number,
)
from carbongov.agents.types import ReportSection
from carbongov.corpus import ChunkMetadata, Sector, SubCorpus, fact_rows_in
from carbongov.demo import demo_testset
from carbongov.evaluation import (
    FIELD_NAMES,
    FieldStatus,
    TestQuery,
    score_answer,
)
from carbongov.index import (
    EmbeddingVector,
    MetadataFilter,
    ReferenceEmbedder,
    RetrievalConfig,
    VectorCache,
    VectorIndex,
)
from carbongov.runtime import Engine

CONFLICT_IDS = {"ningbo-total-emissions#0", "ningbo-lowcarbon-pilot-review#0"}
CONFLICT_QUESTION = "What are the total CO2 emissions of Ningbo in 2023?"


@pytest.fixture(scope="module")
def engine():
    return Engine.demo()


@pytest.fixture(scope="module")
def testset():
    return [TestQuery.from_dict(r) for r in demo_testset()]


# -- factual-retrieval gap ---------------------------------------------------

def test_rag_on_off_gap_on_bundled_corpus(engine, testset):
    """RAG-on reaches >=90 avg score at exactly 5 docs/query; RAG-off collapses."""
    ndocs = len(engine.store.documents)
    fact_rows = sum(len(fact_rows_in(c.text)) for c in engine.store.iter_chunks())
    assert ndocs >= 40, f"bundled corpus has only {ndocs} documents"
    assert fact_rows >= 20, f"bundled corpus has only {fact_rows} fact rows"

    started = time.monotonic()
    on = engine.eval_suite(testset, rag_enabled=True)
    off = engine.eval_suite(testset, rag_enabled=False)
    elapsed = time.monotonic() - started

    assert on.avg_score >= 90.0, f"RAG-on avg_score {on.avg_score}"
    assert on.avg_docs == 5.0, f"RAG-on avg_docs {on.avg_docs} != 5.0"
    assert on.rates["region"] == 1.0, f"region detection {on.rates['region']}"
    assert on.rates["numeric"] >= 0.90, f"numeric detection {on.rates['numeric']}"
    assert off.avg_score <= 10.0, f"RAG-off avg_score {off.avg_score}"
    assert off.avg_docs == 0.0, f"RAG-off avg_docs {off.avg_docs}"
    assert elapsed < 10.0, f"suite took {elapsed:.1f}s"
    print(f"PASS rag gap: on {on.avg_score:.1f}@{on.avg_docs} docs "
          f"(region {on.rates['region']:.0%}, numeric {on.rates['numeric']:.0%}), "
          f"off {off.avg_score:.1f}@{off.avg_docs} docs, {elapsed:.2f}s for {2 * on.n} queries")


# -- retrieval exactness against a brute-force oracle ------------------------

_CITIES = ("Ningbo", "Hangzhou", "Wenzhou", "Qingdao", "Jinan", "Tangshan")
_WORDS = (
    "carbon emission inventory sector industry transport building energy waste "
    "policy pilot district heating steel cement kiln port rail freight solar "
    "rooftop storage retrofit efficiency benchmark monitoring verification "
    "municipal provincial target peak reduction intensity coal gas electricity "
    "renewable share capacity swap corridor transit compact land bulletin audit"
).split()


def _fixture_chunks(rng: random.Random, n: int):
    chunks = []
    for i in range(n):
        text = " ".join(rng.choice(_WORDS) for _ in range(rng.randint(6, 18)))
        md = ChunkMetadata(
            city=rng.choice(_CITIES + (None,)),
            year=rng.choice(tuple(range(2015, 2031)) + (None,)),
            sector=rng.choice(tuple(Sector) + (None,)),
            sub_corpus=rng.choice(tuple(SubCorpus) + (None,)),
        )
        chunks.append((f"fixture-{i:03d}#0", f"{text} row {i}", md))
    return chunks


def _random_filter(rng: random.Random, combo: int) -> MetadataFilter:
    """One of the 16 on/off combinations of the four filter fields."""
    year = rng.randint(2015, 2030)
    return MetadataFilter(
        city=rng.choice(_CITIES) if combo & 1 else None,
        year_range=(year, year + rng.randint(0, 6)) if combo & 2 else None,
        sectors=frozenset(rng.sample(tuple(Sector), rng.randint(1, 3))) if combo & 4 else None,
        sub_corpora=frozenset(rng.sample(tuple(SubCorpus), rng.randint(1, 2))) if combo & 8 else None,
    )


def _oracle_top_k(entries, query_vec: EmbeddingVector, k: int, flt: MetadataFilter):
    """Exhaustive rescan with math.fsum cosine, rounded like the index ranks."""
    scored = []
    for chunk_id, entry in entries:
        if not flt.matches(entry.metadata):
            continue
        if query_vec.is_zero or entry.vector.is_zero:
            sim = 0.0
        else:
            sim = math.fsum(
                float(a) * float(b) for a, b in zip(query_vec.values, entry.vector.values))
        scored.append((round(sim, 12), chunk_id))
    scored.sort(key=lambda t: (-t[0], t[1]))
    return scored[:k]


def test_search_matches_brute_force_oracle_under_all_filters():
    rng = random.Random(20260822)
    embedder = ReferenceEmbedder(dim=128)
    index = VectorIndex(embedder)
    chunks = _fixture_chunks(rng, 500)
    index.upsert_texts(chunks)
    entries = [(cid, index.entry(cid)) for cid, _, _ in chunks]

    started = time.monotonic()
    checked = Counter()
    for i in range(100):
        query = " ".join(rng.choice(_WORDS) for _ in range(rng.randint(2, 9)))
        combo = i % 16
        flt = _random_filter(rng, combo)
        k = (1, 3, 5, 10)[i % 4]
        hits = index.search_top_k(query, RetrievalConfig(k=k), flt)
        expected = _oracle_top_k(entries, embedder.embed(query), k, flt)
        assert [h.chunk_id for h in hits] == [cid for _, cid in expected], (
            f"query {i}: ranking diverged from the oracle (filter combo {combo})")
        for hit, (sim, _) in zip(hits, expected):
            assert abs(hit.similarity - sim) <= 1e-9, (
                f"query {i}: similarity {hit.similarity} vs oracle {sim}")
        checked[combo] += 1
    elapsed = time.monotonic() - started

    assert len(checked) == 16, "not every filter combination was exercised"
    assert elapsed < 30.0, f"exactness sweep took {elapsed:.1f}s"
    print(f"PASS retrieval exactness: 100 queries x 500 chunks, "
          f"16 filter combos, ids+order exact, sims within 1e-9, {elapsed:.2f}s")


# -- cache stability under a drifting embedder -------------------------------

class DriftingEmbedder:
    """Remote-style embedder whose raw vectors wobble on every call."""

    def __init__(self, dim: int = 96):
        self.dim = dim
        self.embedder_id = f"drifting-{dim}"
        self.calls: Counter = Counter()
        self._rng = random.Random(7)
        self._base = ReferenceEmbedder(dim=dim)

    def embed(self, text: str) -> EmbeddingVector:
        self.calls[text] += 1
        base = self._base.embed(text)
        noise = np.array([self._rng.uniform(-0.2, 0.2) for _ in range(self.dim)])
        return EmbeddingVector.from_raw(base.values + noise)


def test_cache_pins_results_of_a_drifting_embedder():
    raw = DriftingEmbedder()
    first, second = raw.embed("same text"), raw.embed("same text")
    assert not np.allclose(first.values, second.values), (
        "fixture embedder is not actually drifting")

    embedder = DriftingEmbedder()
    index = VectorIndex(embedder, cache=VectorCache())
    chunks = [
        (f"doc-{i}#0", text, ChunkMetadata(city="Ningbo"))
        for i, text in enumerate(
            " ".join(random.Random(i).choices(_WORDS, k=12)) for i in range(20))
    ]
    index.upsert_texts(chunks)

    queries = ["carbon peak target", "district heating retrofit", "port rail freight",
               "industrial efficiency benchmark", "renewable share capacity"]
    baselines = {}
    for repeat in range(10):
        for q in queries:
            hits = [(h.chunk_id, h.similarity) for h in index.search_top_k(q, RetrievalConfig(k=5))]
            if repeat == 0:
                baselines[q] = hits
            else:
                assert hits == baselines[q], f"repeat {repeat} changed the top-k for {q!r}"

    distinct_texts = {text for _, text, _ in chunks} | set(queries)
    assert set(embedder.calls) == distinct_texts
    assert all(n == 1 for n in embedder.calls.values()), (
        f"re-embedded texts: { {t: n for t, n in embedder.calls.items() if n != 1} }")
    print(f"PASS cache stability: {len(queries)} queries x 10 repeats identical, "
          f"{len(distinct_texts)} distinct texts embedded exactly once")


# -- grounding: citations dereference, key numbers verbatim ------------------

def _audit(store, texts, evidence_ids, key_numbers, counts):
    for blob in texts:
        for cid in citation_ids(blob):
            counts["markers"] += 1
            assert cid in evidence_ids, f"citation {cid} has no evidence item"
            assert store.chunk(cid) is not None, f"citation {cid} not in corpus"
    for kn in key_numbers:
        counts["numbers"] += 1
        chunk = store.chunk(kn.source_chunk_id)
        assert chunk is not None, f"key number sourced from unknown {kn.source_chunk_id}"
        assert verify_key_number(kn, chunk.text), (
            f"{kn.value} {kn.unit} not verbatim in {kn.source_chunk_id}")


def test_all_demo_outputs_are_fully_grounded(engine, testset):
    """Machine audit over every agent output of the demonstration run."""
    store = engine.store
    counts = Counter()

    for q in testset:
        answer = engine.qa(q.question)
        _audit(store, [answer.answer_text],
               {e.chunk_id for e in answer.evidence}, answer.key_numbers, counts)

    for city in ("Ningbo", "Hangzhou", "Tangshan", "Guangzhou", "Qingdao", "Wenzhou"):
        result = engine.workflow(WorkflowRequest(kind=RequestKind.Report, city=city))
        diag = result.outputs[AgentRole.Assessment]
        plan = result.outputs[AgentRole.Planning]
        doc = result.outputs[AgentRole.Report]

        evidence_ids = {e.chunk_id for e in diag.evidence}
        numbers = list(diag.total_emissions and [diag.total_emissions] or [])
        _audit(store, [diag.peaking_status], evidence_ids, numbers, counts)
        for ss in diag.sector_shares.values():
            for cid in ss.chunk_ids:
                counts["markers"] += 1
                assert store.chunk(cid) is not None

        for recs in plan.sections.values():
            for rec in recs:
                for cid in rec.chunk_ids:
                    counts["markers"] += 1
                    assert store.chunk(cid) is not None

        doc.validate()
        register_ids = {cid for cid, _ in doc.source_register}
        _audit(store, [p for s in doc.sections if s.heading is not ReportSection.Sources
                       for p in s.paragraphs], register_ids, [], counts)

    assert counts["markers"] > 50, f"audit looked at only {counts['markers']} citations"
    assert counts["numbers"] >= 10, f"audit looked at only {counts['numbers']} key numbers"
    print(f"PASS grounding: {counts['markers']} citations dereferenced, "
          f"{counts['numbers']} key numbers verbatim, zero tolerance")


# -- boundary conflict surfacing ---------------------------------------------

def test_boundary_conflict_reaches_every_surface(engine):
    """The 220 vs 195 Mt disagreement is flagged once and propagates everywhere."""
    answer = engine.qa(CONFLICT_QUESTION)
    qa_flags = [f for f in answer.flags if f.kind is FlagKind.BoundaryMismatch]
    assert len(qa_flags) == 1, f"expected exactly one flag, got {len(qa_flags)}"
    assert set(qa_flags[0].involved_chunk_ids) == CONFLICT_IDS

    result = engine.workflow(WorkflowRequest(kind=RequestKind.Report, city="Ningbo"))
    diag = result.outputs[AgentRole.Assessment]
    diag_flags = [f for f in diag.flags if f.kind is FlagKind.BoundaryMismatch]
    assert len(diag_flags) == 1
    assert set(diag_flags[0].involved_chunk_ids) == CONFLICT_IDS

    doc = result.outputs[AgentRole.Report]
    problems = "\n".join(
        next(s for s in doc.sections if s.heading is ReportSection.Problems).paragraphs)
    assert "BoundaryMismatch" in problems
    for cid in CONFLICT_IDS:
        assert cid in problems, f"{cid} missing from the problems section"
    print("PASS conflict surfacing: one BoundaryMismatch with both chunk ids "
          "in the answer, the diagnostics, and the report problems section")


# -- planted diagnostic values ------------------------------------------------

def test_city_diagnostics_match_planted_values(engine):
    result = engine.workflow(WorkflowRequest(kind=RequestKind.Assess, city="Ningbo"))
    diag = result.final
    assert diag.total_emissions is not None
    assert diag.total_emissions.value == 220.0
    assert diag.total_emissions.unit == "Mt CO2"
    assert diag.total_emissions.year == 2023
    assert diag.sector_shares[Sector.Industry].share == 0.65
    assert diag.sector_shares[Sector.Transport].share == 0.18
    assert diag.peaking_year == 2025
    print("PASS planted diagnostics: 220 Mt CO2 (2023), Industry 0.65, "
          "Transport 0.18, peaking 2025, all exact")


# -- report structure and determinism ----------------------------------------

def test_reports_validate_and_are_byte_identical_across_runs():
    for city in ("Ningbo", "Hangzhou", "Tangshan", "Qingdao"):
        doc = Engine.demo().workflow(
            WorkflowRequest(kind=RequestKind.Report, city=city)).final
        doc.validate()

    runs = []
    for _ in range(2):
        result = Engine.demo().workflow(WorkflowRequest(kind=RequestKind.Report, city="Ningbo"))
        runs.append(json.dumps(result.to_dict(), sort_keys=True, ensure_ascii=False))
    assert runs[0] == runs[1], "two offline runs produced different report bytes"
    print(f"PASS report structure: 4 city reports validate, "
          f"repeat run byte-identical ({len(runs[0])} bytes)")


# -- scoring arithmetic -------------------------------------------------------

G, U, M = (FieldStatus.DetectedGrounded, FieldStatus.DetectedUngrounded, FieldStatus.Missed)
HAND_COMPUTED = [
    ((G,), 100.0),
    ((M,), 0.0),
    ((U,), 50.0),
    ((G, M), 50.0),
    ((G, U), 75.0),
    ((U, U), 50.0),
    ((G, G, G), 100.0),
    ((G, U, M), 50.0),
    ((G, G, U, M), 62.5),
    ((U, M, M, M), 12.5),
]


def test_scores_reproduce_hand_computed_values():
    for statuses, expected in HAND_COMPUTED:
        detections = dict(zip(FIELD_NAMES, statuses))
        got = score_answer("hand", detections, docs_retrieved=5).score
        assert got == expected, f"{statuses} scored {got}, hand-computed {expected}"
    print(f"PASS scoring arithmetic: {len(HAND_COMPUTED)} status combinations exact, "
          "including the 62.5 mixed case")
