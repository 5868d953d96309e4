"""Engine: one object wiring corpus, index, backends, and agents together.

The service layer and the CLI both talk to this instead of assembling the
pieces themselves. An engine built from config persists what it ingests;
the demo engine lives entirely in memory.
"""
from __future__ import annotations

from pathlib import Path
from typing import Any, Iterable, Mapping

from .agents import (
    GenerationBackend,
    QAAnswer,
    RemoteChatBackend,
    Retriever,
    TemplateBackend,
    WorkflowRequest,
    WorkflowResult,
    execute_workflow,
    run_evidence_qa,
)
from .config import EngineConfig
from .corpus.store import CorpusStore, ingest_records
from .errors import InvalidConfig
from .evaluation import AggregateReport, TestQuery, run_suite
from .index import (
    EMPTY_FILTER,
    CachingEmbedder,
    Embedder,
    MetadataFilter,
    ReferenceEmbedder,
    RemoteEmbedder,
    RetrievalConfig,
    VectorCache,
    VectorIndex,
)


def build_embedder(config: EngineConfig) -> Embedder:
    e = config.embedder
    if e.kind == "reference":
        return ReferenceEmbedder(dim=e.dim)
    return RemoteEmbedder(endpoint=e.endpoint, dim=e.dim, model=e.model)


def build_generator(config: EngineConfig) -> GenerationBackend:
    g = config.generator
    if g.kind == "template":
        return TemplateBackend()
    return RemoteChatBackend(
        endpoint=g.endpoint,
        model=g.model,
        temperature=g.temperature,
        key_env=g.key_env,
        retries=g.retries,
    )


class Engine:
    def __init__(
        self,
        config: EngineConfig,
        store: CorpusStore,
        index: VectorIndex,
        gen: GenerationBackend,
    ):
        self.config = config
        self.store = store
        self.index = index
        self.gen = gen
        self.retriever = Retriever(index, store)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_config(cls, config: EngineConfig) -> "Engine":
        embedder = build_embedder(config)
        cache = VectorCache(config.cache_path) if config.cache_path else None

        store = CorpusStore()
        if config.corpus_dir and (Path(config.corpus_dir) / "documents.jsonl").exists():
            store = CorpusStore.load(config.corpus_dir)

        if config.index_path and Path(config.index_path).exists():
            index = VectorIndex.load(config.index_path, embedder, cache=cache)
        else:
            index = VectorIndex(embedder, cache=cache, path=config.index_path)

        return cls(config, store, index, build_generator(config))

    @classmethod
    def demo(cls, config: EngineConfig | None = None) -> "Engine":
        """Fully offline in-memory engine over the bundled corpus."""
        from .demo import demo_records

        config = config or EngineConfig()
        if config.embedder.kind != "reference" or config.generator.kind != "template":
            raise InvalidConfig("the demo engine is offline: reference embedder + template generator")
        store, _ = ingest_records(demo_records())
        index = VectorIndex(ReferenceEmbedder(dim=config.embedder.dim))
        index.upsert_texts((c.chunk_id, c.text, c.metadata) for c in store.iter_chunks())
        return cls(config, store, index, TemplateBackend())

    # -- corpus lifecycle --------------------------------------------------

    def ingest(self, records: Iterable[Mapping[str, Any]]) -> tuple[int, int, list[str]]:
        """Ingest records into the corpus and index; persists when paths are
        configured. Returns (documents, chunks, warnings)."""
        records = list(records)
        _, warnings = ingest_records(records, into=self.store)
        chunks = [c for r in records for c in self.store.chunks_for(r["doc_id"])]
        self.index.upsert_texts((c.chunk_id, c.text, c.metadata) for c in chunks)
        self.persist()
        return len(records), len(chunks), warnings

    def persist(self) -> None:
        if self.config.corpus_dir:
            self.store.save(self.config.corpus_dir)
        if self.config.index_path:
            self.index.persist()

    # -- operations --------------------------------------------------------

    def retrieval_config(self, k: int | None = None) -> RetrievalConfig:
        return RetrievalConfig(k=k) if k else self.config.retrieval

    def qa(
        self,
        question: str,
        k: int | None = None,
        flt: MetadataFilter = EMPTY_FILTER,
        use_retrieval: bool = True,
    ) -> QAAnswer:
        return run_evidence_qa(
            question,
            self.retriever,
            self.gen,
            self.retrieval_config(k),
            flt=flt,
            rel_tol=self.config.conflict.rel_tol,
            use_retrieval=use_retrieval,
        )

    def workflow(self, request: WorkflowRequest) -> WorkflowResult:
        return execute_workflow(
            request,
            self.retriever,
            self.gen,
            self.config.retrieval,
            rel_tol=self.config.conflict.rel_tol,
            resolve_title=self.retriever.doc_title_for_chunk,
        )

    def evidence(self, chunk_id: str) -> dict[str, Any] | None:
        """Chunk text + metadata + parent document info, or None."""
        chunk = self.store.chunk(chunk_id)
        if chunk is None:
            return None
        doc = self.store.document(chunk.doc_id)
        return {
            "chunk_id": chunk.chunk_id,
            "text": chunk.text,
            "char_span": list(chunk.char_span),
            "metadata": chunk.metadata.to_dict(),
            "doc_id": chunk.doc_id,
            "doc_title": doc.title if doc else chunk.doc_id,
            "sub_corpus": doc.sub_corpus.value if doc else None,
        }

    def eval_suite(
        self,
        queries: list[TestQuery],
        rag_enabled: bool,
        setting: str | None = None,
    ) -> AggregateReport:
        return run_suite(
            queries,
            lambda q: self.qa(q, use_retrieval=rag_enabled),
            rag_enabled=rag_enabled,
            setting=setting or ("retrieval on" if rag_enabled else "retrieval off"),
        )
