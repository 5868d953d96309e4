"""Generation backends behind a single grounded-prompt contract.

TemplateBackend does deterministic sentence selection and slot filling from
the evidence excerpts alone; the whole offline test suite runs on it.
RemoteChatBackend speaks a chat-completions-style HTTP protocol for real
model endpoints. Both return raw text that generate_structured parses into
a named output schema, with one repair round before giving up.
"""
from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, replace
from typing import Callable

import httpx

from ..corpus import Sector
from ..errors import BackendUnavailable, SchemaViolation
from .types import CITATION_RE, EvidenceItem, citation_ids

NO_EVIDENCE_TEXT = (
    "No supporting evidence was retrieved, and the indexed corpus cannot "
    "answer this without it."
)

_STOPWORDS = frozenset(
    "the a an of in on for to and or with by is are was were be been at as "
    "from that this these those it its which what when where who how does do "
    "did will would should can could about into over under per".split()
)

# fullwidth stops end a sentence with no trailing space, so the second
# alternative splits on the zero-width position right after them
_SENTENCE_SPLIT = re.compile(r"(?<=[.!?。！？])\s+|(?<=[。！？])")


def content_tokens(text: str) -> set[str]:
    return {t for t in re.findall(r"\w+", text.lower()) if t not in _STOPWORDS}


def split_sentences(text: str) -> list[str]:
    out = []
    for line in text.split("\n"):
        for piece in _SENTENCE_SPLIT.split(line):
            piece = piece.strip()
            if piece:
                out.append(piece)
    return out


@dataclass(frozen=True)
class GroundedPrompt:
    """Everything a backend may condition on. Evidence excerpts are the only
    factual source; the schema names the JSON shape expected back."""

    instructions: str
    task: str
    evidence: tuple[EvidenceItem, ...]
    schema: str


class GenerationBackend:
    def generate(self, prompt: GroundedPrompt) -> str:
        raise NotImplementedError


# -- schema parsing ---------------------------------------------------------

def _require_str(data: dict, field: str) -> str:
    value = data.get(field)
    if not isinstance(value, str):
        raise ValueError(f"field {field!r} must be a string")
    return value


def _check_qa_answer(data: dict) -> dict:
    return {"answer_text": _require_str(data, "answer_text")}


def _check_statement(data: dict) -> dict:
    return {"text": _require_str(data, "text")}


def _check_recommendations(data: dict) -> dict:
    recs = data.get("recommendations")
    if not isinstance(recs, list):
        raise ValueError("field 'recommendations' must be a list")
    cleaned = []
    for rec in recs:
        if not isinstance(rec, dict):
            raise ValueError("each recommendation must be an object")
        text = _require_str(rec, "text")
        sector = rec.get("sector")
        if sector is not None:
            try:
                sector = Sector(sector).value
            except ValueError:
                raise ValueError(f"unknown sector tag {sector!r}")
        ids = rec.get("chunk_ids")
        if not isinstance(ids, list) or not all(isinstance(c, str) for c in ids):
            raise ValueError("chunk_ids must be a list of strings")
        cleaned.append({"text": text, "sector": sector, "chunk_ids": ids})
    return {"recommendations": cleaned}


_SCHEMAS: dict[str, Callable[[dict], dict]] = {
    "qa_answer": _check_qa_answer,
    "statement": _check_statement,
    "recommendations": _check_recommendations,
}


def _parse_json(raw: str) -> dict:
    try:
        data = json.loads(raw)
    except json.JSONDecodeError:
        start, end = raw.find("{"), raw.rfind("}")
        if start < 0 or end <= start:
            raise ValueError("reply contains no JSON object")
        try:
            data = json.loads(raw[start:end + 1])
        except json.JSONDecodeError as exc:
            raise ValueError(f"reply is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError("reply must be a JSON object")
    return data


def generate_structured(
    backend: GenerationBackend,
    prompt: GroundedPrompt,
    validator: Callable[[dict], None] | None = None,
) -> dict:
    """Generate, parse into the declared schema, and validate; one repair
    round with the error echoed back, then SchemaViolation."""
    if prompt.schema not in _SCHEMAS:
        raise SchemaViolation(f"unknown output schema {prompt.schema!r}")
    check = _SCHEMAS[prompt.schema]

    def attempt(p: GroundedPrompt) -> dict:
        data = check(_parse_json(backend.generate(p)))
        if validator is not None:
            validator(data)
        return data

    try:
        return attempt(prompt)
    except ValueError as exc:
        repair = replace(
            prompt,
            instructions=prompt.instructions
            + f"\nYour previous reply was rejected: {exc}. "
            f"Reply with a single JSON object for schema {prompt.schema!r} and nothing else.",
        )
        try:
            return attempt(repair)
        except ValueError as exc2:
            raise SchemaViolation(
                f"backend output failed schema {prompt.schema!r} after repair: {exc2}"
            ) from exc2


# -- validators agents attach to their prompts ------------------------------

def citation_closure_validator(evidence_ids: set[str], field: str) -> Callable[[dict], None]:
    """Every marker must dereference, and every sentence stating a digit
    must carry at least one marker."""

    def check(data: dict) -> None:
        text = data[field]
        loose = citation_ids(text) - evidence_ids
        if loose:
            raise ValueError(f"citations not in the evidence set: {sorted(loose)}")
        for sent in split_sentences(text):
            if any(ch.isdigit() for ch in CITATION_RE.sub("", sent)):
                if not citation_ids(sent):
                    raise ValueError(f"uncited factual sentence: {sent[:80]!r}")

    return check


def recommendations_validator(evidence_ids: set[str]) -> Callable[[dict], None]:
    def check(data: dict) -> None:
        for rec in data["recommendations"]:
            loose = set(rec["chunk_ids"]) - evidence_ids
            if loose:
                raise ValueError(f"recommendation cites unknown chunks: {sorted(loose)}")
            if any(ch.isdigit() for ch in rec["text"]):
                raise ValueError(
                    f"recommendations must stay qualitative, got {rec['text'][:80]!r}"
                )

    return check


# -- offline backend --------------------------------------------------------

class TemplateBackend(GenerationBackend):
    """Fully deterministic: selects the evidence sentences that overlap the
    task in content words and fills the output schema with them."""

    def generate(self, prompt: GroundedPrompt) -> str:
        if prompt.schema == "qa_answer":
            return json.dumps({"answer_text": self._answer(prompt)}, ensure_ascii=False)
        if prompt.schema == "statement":
            return json.dumps({"text": self._statement(prompt)}, ensure_ascii=False)
        if prompt.schema == "recommendations":
            return json.dumps({"recommendations": self._recommend(prompt)}, ensure_ascii=False)
        raise SchemaViolation(f"unknown output schema {prompt.schema!r}")

    def _ranked_sentences(self, prompt: GroundedPrompt):
        """(score, evidence position, sentence position, sentence, chunk_id),
        best first; ordering is total so output is reproducible."""
        qtok = content_tokens(prompt.task)
        ranked = []
        for ei, item in enumerate(prompt.evidence):
            for si, sent in enumerate(split_sentences(item.excerpt)):
                score = len(qtok & content_tokens(sent))
                ranked.append((score, ei, si, sent, item.chunk_id))
        ranked.sort(key=lambda t: (-t[0], t[1], t[2]))
        return ranked

    def _answer(self, prompt: GroundedPrompt) -> str:
        if not prompt.evidence:
            return NO_EVIDENCE_TEXT
        ranked = self._ranked_sentences(prompt)
        picked = []
        used_chunks: set[str] = set()
        for score, _, _, sent, cid in ranked:
            if score < 1 or cid in used_chunks:
                continue
            picked.append((sent, cid))
            used_chunks.add(cid)
            if len(picked) == 3:
                break
        if not picked:
            first = prompt.evidence[0]
            sentences = split_sentences(first.excerpt)
            picked = [(sentences[0], first.chunk_id)] if sentences else []
        if not picked:
            return NO_EVIDENCE_TEXT
        return " ".join(f"{sent.rstrip('.')} [{cid}]." for sent, cid in picked)

    def _statement(self, prompt: GroundedPrompt) -> str:
        # the caller drafts the sentence; this backend keeps it verbatim
        marker = "Draft:"
        pos = prompt.task.find(marker)
        if pos >= 0:
            return prompt.task[pos + len(marker):].strip()
        return prompt.task.strip()

    def _recommend(self, prompt: GroundedPrompt) -> list[dict]:
        recs = []
        used: set[str] = set()
        for score, _, _, sent, cid in self._ranked_sentences(prompt):
            if score < 2 or cid in used or any(ch.isdigit() for ch in sent):
                continue
            item = next(e for e in prompt.evidence if e.chunk_id == cid)
            sector = item.metadata.sector.value if item.metadata.sector else None
            recs.append({"text": sent.rstrip("."), "sector": sector, "chunk_ids": [cid]})
            used.add(cid)
            if len(recs) == 3:
                break
        return recs


# -- remote backend ---------------------------------------------------------

def _render_messages(prompt: GroundedPrompt) -> list[dict]:
    lines = [prompt.task, ""]
    if prompt.evidence:
        lines.append("Evidence (cite by id, use nothing else):")
        for item in prompt.evidence:
            lines.append(f"[{item.chunk_id}] {item.excerpt}")
    else:
        lines.append("Evidence: none retrieved.")
    system = (
        prompt.instructions
        + f"\nReply with a single JSON object for schema {prompt.schema!r}."
    )
    return [
        {"role": "system", "content": system},
        {"role": "user", "content": "\n".join(lines)},
    ]


class RemoteChatBackend(GenerationBackend):
    """POST {endpoint}/chat with {model, messages, temperature} -> {content}.

    Credentials come from the environment variable named at construction,
    never from config values on disk.
    """

    def __init__(
        self,
        endpoint: str,
        model: str,
        temperature: float = 0.0,
        key_env: str | None = None,
        retries: int = 2,
        timeout: float = 30.0,
        client: httpx.Client | None = None,
    ):
        self.endpoint = endpoint.rstrip("/")
        self.model = model
        self.temperature = temperature
        self.key_env = key_env
        self.retries = retries
        self._client = client or httpx.Client(timeout=timeout)

    def generate(self, prompt: GroundedPrompt) -> str:
        payload = {
            "model": self.model,
            "messages": _render_messages(prompt),
            "temperature": self.temperature,
        }
        headers = {}
        if self.key_env:
            key = os.environ.get(self.key_env)
            if key:
                headers["Authorization"] = f"Bearer {key}"
        last_error: Exception | None = None
        for _ in range(self.retries + 1):
            try:
                resp = self._client.post(f"{self.endpoint}/chat", json=payload, headers=headers)
                resp.raise_for_status()
                content = resp.json().get("content")
                if not isinstance(content, str):
                    raise BackendUnavailable("chat endpoint replied without 'content'")
                return content
            except (httpx.HTTPError, json.JSONDecodeError) as exc:
                last_error = exc
        raise BackendUnavailable(f"chat endpoint failed after {self.retries + 1} attempts: {last_error}")
