"""Generation backend contract: deterministic template filling, schema
parsing with one repair round, and the remote chat protocol."""
import json

import httpx
import pytest

from carbongov.agents import (
    GroundedPrompt,
    NO_EVIDENCE_TEXT,
    EvidenceItem,
    RemoteChatBackend,
    TemplateBackend,
    generate_structured,
)
from carbongov.agents.backends import (
    citation_closure_validator,
    content_tokens,
    recommendations_validator,
    split_sentences,
)
from carbongov.corpus import ChunkMetadata, Sector
from carbongov.errors import BackendUnavailable, SchemaViolation


def _evidence(chunk_id, text, **meta):
    return EvidenceItem(chunk_id=chunk_id, similarity=1.0,
                        metadata=ChunkMetadata(**meta), excerpt=text)


FACT_PROMPT = GroundedPrompt(
    instructions="Answer from the evidence only.",
    task="What are the total CO2 emissions of Ningbo in 2023?",
    evidence=(
        _evidence("inv#0", "Ningbo | 2023 | all | total CO2 emissions | 220 Mt CO2"),
    ),
    schema="qa_answer",
)


# -- text helpers -----------------------------------------------------------

def test_sentence_splitting_handles_newlines_and_cjk_stops():
    text = "First point. Second point!\nThird line\n宁波达峰。下一句"
    assert split_sentences(text) == [
        "First point.", "Second point!", "Third line", "宁波达峰。", "下一句"]


def test_content_tokens_drop_stopwords():
    assert content_tokens("What is the share of transport?") == {"share", "transport"}


# -- template backend -------------------------------------------------------

def test_template_answers_a_fact_query_with_the_cited_row():
    raw = TemplateBackend().generate(FACT_PROMPT)
    answer = json.loads(raw)["answer_text"]
    assert "220 Mt CO2" in answer
    assert "[inv#0]" in answer


def test_template_output_is_deterministic():
    gen = TemplateBackend()
    assert gen.generate(FACT_PROMPT) == gen.generate(FACT_PROMPT)
    assert gen.generate(FACT_PROMPT) == TemplateBackend().generate(FACT_PROMPT)


def test_template_without_evidence_says_so():
    prompt = GroundedPrompt("i", "any question", (), "qa_answer")
    assert json.loads(TemplateBackend().generate(prompt))["answer_text"] == NO_EVIDENCE_TEXT


def test_template_statement_passes_the_draft_through():
    prompt = GroundedPrompt(
        "polish", "Section: Status\nDraft:\nEmissions reached 220 Mt CO2 [inv#0].",
        (), "statement")
    assert json.loads(TemplateBackend().generate(prompt))["text"] == \
        "Emissions reached 220 Mt CO2 [inv#0]."


def test_template_recommendations_stay_qualitative_and_cited():
    prompt = GroundedPrompt(
        "propose measures",
        "Section: InfrastructureUpgrades. City: Ningbo. Theme: infrastructure rail port",
        (
            _evidence("case#0",
                      "Ningbo shifted port freight to rail corridors. "
                      "The rail programme cut truck traffic at the port gates.",
                      sector=Sector.Transport),
            _evidence("case#1",
                      "A 40 km rail spur was added in 2021 to the port."),
        ),
        "recommendations",
    )
    recs = json.loads(TemplateBackend().generate(prompt))["recommendations"]
    assert recs, "overlapping evidence should yield at least one measure"
    for rec in recs:
        assert rec["chunk_ids"] == ["case#0"]  # the digit-bearing chunk is skipped
        assert not any(ch.isdigit() for ch in rec["text"])
        assert rec["sector"] == "Transport"


# -- structured generation and repair ---------------------------------------

class ScriptedBackend:
    """Replays a fixed list of replies and records the prompts it saw."""

    def __init__(self, replies):
        self.replies = list(replies)
        self.prompts = []

    def generate(self, prompt):
        self.prompts.append(prompt)
        return self.replies[len(self.prompts) - 1]


def test_unknown_schema_is_rejected_up_front():
    with pytest.raises(SchemaViolation):
        generate_structured(TemplateBackend(), GroundedPrompt("i", "t", (), "poems"))


def test_prose_reply_gets_one_repair_then_fails():
    backend = ScriptedBackend(["Here are my thoughts on the plan...",
                               "Still just prose, no JSON."])
    with pytest.raises(SchemaViolation):
        generate_structured(backend, FACT_PROMPT)
    assert len(backend.prompts) == 2
    assert "rejected" in backend.prompts[1].instructions
    assert "no JSON object" in backend.prompts[1].instructions


def test_repair_round_can_succeed():
    backend = ScriptedBackend([
        "I think the answer is 220.",
        '{"answer_text": "Emissions were 220 Mt CO2 [inv#0]."}',
    ])
    data = generate_structured(backend, FACT_PROMPT)
    assert data["answer_text"].endswith("[inv#0].")
    assert len(backend.prompts) == 2


def test_json_embedded_in_prose_is_still_parsed():
    backend = ScriptedBackend([
        'Sure! Here it is:\n```json\n{"answer_text": "220 Mt CO2 in 2023 [inv#0]."}\n```',
    ])
    data = generate_structured(backend, FACT_PROMPT)
    assert data["answer_text"].startswith("220")
    assert len(backend.prompts) == 1


def test_wrong_field_type_triggers_repair():
    backend = ScriptedBackend([
        '{"answer_text": 220}',
        '{"answer_text": "220 Mt CO2 [inv#0]."}',
    ])
    assert generate_structured(backend, FACT_PROMPT)["answer_text"] == "220 Mt CO2 [inv#0]."


def test_closure_validator_rejects_unknown_citations():
    check = citation_closure_validator({"inv#0"}, "answer_text")
    check({"answer_text": "Emissions were 220 Mt CO2 [inv#0]."})
    with pytest.raises(ValueError):
        check({"answer_text": "Emissions were 220 Mt CO2 [ghost#9]."})


def test_closure_validator_rejects_uncited_numeric_sentences():
    check = citation_closure_validator({"inv#0"}, "answer_text")
    with pytest.raises(ValueError):
        check({"answer_text": "Emissions were 220 Mt CO2 in 2023."})
    # prose without digits needs no marker
    check({"answer_text": "Emissions kept rising."})


def test_recommendations_validator_enforces_cited_qualitative_text():
    check = recommendations_validator({"case#0"})
    check({"recommendations": [
        {"text": "Shift port freight to rail", "sector": "Transport",
         "chunk_ids": ["case#0"]}]})
    with pytest.raises(ValueError):
        check({"recommendations": [
            {"text": "Shift port freight to rail", "sector": "Transport",
             "chunk_ids": ["other#1"]}]})
    with pytest.raises(ValueError):
        check({"recommendations": [
            {"text": "Cut truck traffic by 30", "sector": "Transport",
             "chunk_ids": ["case#0"]}]})


def test_invalid_sector_tag_is_a_schema_error():
    backend = ScriptedBackend([
        '{"recommendations": [{"text": "x", "sector": "Agronomy", "chunk_ids": ["c#0"]}]}',
        '{"recommendations": []}',
    ])
    prompt = GroundedPrompt("i", "t", (), "recommendations")
    assert generate_structured(backend, prompt) == {"recommendations": []}
    assert len(backend.prompts) == 2


# -- remote chat backend ----------------------------------------------------

def _remote(handler, **kwargs):
    transport = httpx.MockTransport(handler)
    client = httpx.Client(transport=transport)
    return RemoteChatBackend("http://models.internal/v1/", model="m-1",
                             client=client, **kwargs)


def test_remote_backend_posts_the_chat_payload(monkeypatch):
    monkeypatch.setenv("CHAT_KEY", "sk-test-123")
    seen = {}

    def handler(request):
        seen["url"] = str(request.url)
        seen["auth"] = request.headers.get("authorization")
        seen["payload"] = json.loads(request.content)
        return httpx.Response(200, json={"content": '{"answer_text": "ok [inv#0]."}'})

    backend = _remote(handler, key_env="CHAT_KEY")
    raw = backend.generate(FACT_PROMPT)
    assert json.loads(raw)["answer_text"] == "ok [inv#0]."
    assert seen["url"] == "http://models.internal/v1/chat"
    assert seen["auth"] == "Bearer sk-test-123"
    assert seen["payload"]["model"] == "m-1"
    assert seen["payload"]["temperature"] == 0.0
    roles = [m["role"] for m in seen["payload"]["messages"]]
    assert roles == ["system", "user"]
    assert "[inv#0]" in seen["payload"]["messages"][1]["content"]


def test_remote_backend_retries_then_gives_up():
    calls = {"n": 0}

    def handler(request):
        calls["n"] += 1
        raise httpx.ConnectTimeout("no route")

    backend = _remote(handler, retries=2)
    with pytest.raises(BackendUnavailable):
        backend.generate(FACT_PROMPT)
    assert calls["n"] == 3


def test_remote_backend_recovers_within_the_retry_budget():
    calls = {"n": 0}

    def handler(request):
        calls["n"] += 1
        if calls["n"] == 1:
            return httpx.Response(500)
        return httpx.Response(200, json={"content": "recovered"})

    backend = _remote(handler, retries=2)
    assert backend.generate(FACT_PROMPT) == "recovered"
    assert calls["n"] == 2


def test_remote_backend_requires_a_content_field():
    def handler(request):
        return httpx.Response(200, json={"message": "wrong shape"})

    backend = _remote(handler, retries=2)
    with pytest.raises(BackendUnavailable):
        backend.generate(FACT_PROMPT)


def test_remote_backend_works_without_credentials():
    def handler(request):
        assert "authorization" not in request.headers
        return httpx.Response(200, json={"content": "anon"})

    assert _remote(handler).generate(FACT_PROMPT) == "anon"
