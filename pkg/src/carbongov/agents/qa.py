"""Evidence QA agent: retrieve, generate with citations, audit numbers."""
from __future__ import annotations

from ..index import EMPTY_FILTER, MetadataFilter, RetrievalConfig
from .backends import GenerationBackend, GroundedPrompt, citation_closure_validator, generate_structured
from .conflicts import DEFAULT_REL_TOL, detect_numeric_conflicts
from .numbers import fact_row_key_numbers, numbers_in_answer
from .retrieval import Retriever
from .types import FlagKind, QAAnswer, UncertaintyFlag, citation_ids

QA_INSTRUCTIONS = (
    "Answer the question using only the evidence excerpts. After every "
    "sentence that states a fact, cite the supporting excerpt as [chunk_id]. "
    "If the evidence does not answer the question, say so plainly."
)


def run_evidence_qa(
    question: str,
    retrieval: Retriever,
    gen: GenerationBackend,
    cfg: RetrievalConfig | None = None,
    flt: MetadataFilter = EMPTY_FILTER,
    rel_tol: float = DEFAULT_REL_TOL,
    use_retrieval: bool = True,
) -> QAAnswer:
    """Answer one factual question from retrieved evidence.

    ``use_retrieval=False`` is the ablation arm of the evaluation harness:
    the backend sees no excerpts at all and must answer from nothing.
    """
    evidence = retrieval.retrieve(question, cfg, flt) if use_retrieval else []
    if not evidence:
        prompt = GroundedPrompt(QA_INSTRUCTIONS, question, (), "qa_answer")
        data = generate_structured(gen, prompt, citation_closure_validator(set(), "answer_text"))
        return QAAnswer(
            question=question,
            answer_text=data["answer_text"],
            evidence=[],
            key_numbers=[],
            flags=[UncertaintyFlag(FlagKind.InsufficientEvidence, "no evidence retrieved")],
        )

    evidence_ids = {e.chunk_id for e in evidence}
    prompt = GroundedPrompt(QA_INSTRUCTIONS, question, tuple(evidence), "qa_answer")
    data = generate_structured(gen, prompt, citation_closure_validator(evidence_ids, "answer_text"))
    answer_text = data["answer_text"]

    key_numbers = numbers_in_answer(answer_text, evidence, citation_ids(answer_text))
    flags = detect_numeric_conflicts(
        fact_row_key_numbers(evidence),
        rel_tol=rel_tol,
        sub_corpus_by_chunk={e.chunk_id: e.metadata.sub_corpus for e in evidence},
    )
    answer = QAAnswer(
        question=question,
        answer_text=answer_text,
        evidence=evidence,
        key_numbers=key_numbers,
        flags=flags,
    )
    answer.validate()
    return answer
