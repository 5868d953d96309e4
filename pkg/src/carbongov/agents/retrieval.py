"""Bridges the vector index and the corpus store into one retrieval handle."""
from __future__ import annotations

from dataclasses import dataclass

from ..corpus import CorpusStore, SubCorpus
from ..index import EMPTY_FILTER, MetadataFilter, RetrievalConfig, VectorIndex
from .types import EvidenceItem


@dataclass
class Retriever:
    index: VectorIndex
    store: CorpusStore

    def retrieve(
        self,
        query: str,
        cfg: RetrievalConfig | None = None,
        flt: MetadataFilter = EMPTY_FILTER,
    ) -> list[EvidenceItem]:
        hits = self.index.search_top_k(query, cfg, flt)
        items = []
        for hit in hits:
            chunk = self.store.chunk(hit.chunk_id)
            if chunk is None:
                # index ahead of the corpus store; nothing to excerpt from
                continue
            items.append(EvidenceItem(
                chunk_id=hit.chunk_id,
                similarity=hit.similarity,
                metadata=chunk.metadata,
                excerpt=chunk.text,
            ))
        return items

    def doc_title_for_chunk(self, chunk_id: str) -> str:
        return self.store.doc_title(chunk_id)

    def sub_corpus_of(self, chunk_id: str) -> SubCorpus | None:
        chunk = self.store.chunk(chunk_id)
        return chunk.metadata.sub_corpus if chunk else None
