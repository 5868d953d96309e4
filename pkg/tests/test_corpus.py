import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carbongov.corpus import (
    Chunk,
    ChunkMetadata,
    ChunkingConfig,
    Sector,
    SubCorpus,
    chunk_document,
    compute_spans,
    fact_rows_in,
    normalize_document,
    normalize_text,
    validate_corpus,
)
from carbongov.errors import EmptyBody, InvalidConfig


def make_doc(body, doc_id="d1", sub_corpus="Emissions", **kw):
    raw = {"doc_id": doc_id, "title": doc_id, "sub_corpus": sub_corpus, "body": body}
    raw.update(kw)
    return normalize_document(raw)


class TestNormalize:
    def test_tabular_row_flattened(self):
        doc = make_doc([
            {"city": "Ningbo", "year": 2023, "indicator": "total CO2 emissions",
             "value": 220, "unit": "Mt CO2"},
        ])
        assert doc.body == "Ningbo | 2023 | all | total CO2 emissions | 220 Mt CO2"

    def test_blank_body_rejected(self):
        with pytest.raises(EmptyBody):
            make_doc("   ")

    def test_blank_line_collapse(self):
        assert make_doc("a\n\n\nb").body == "a\nb"

    def test_normalization_idempotent(self):
        messy = "  a\t b \n\n\n c  d \r\n e "
        once = normalize_text(messy)
        assert normalize_text(once) == once

    def test_language_defaults_to_zh(self):
        assert make_doc("text").language == "zh"
        assert make_doc("text", language="en").language == "en"

    def test_year_range_validated(self):
        from carbongov.errors import InvalidDocument
        with pytest.raises(InvalidDocument):
            make_doc("x", year_range=[2030, 2020])
        with pytest.raises(InvalidDocument):
            make_doc("x", year_range=[1800, 2020])


def reference_spans(body, max_chars, overlap):
    """Independent scripted splitter: same boundary preference, written plainly."""
    spans = []
    start = 0
    while start < len(body):
        limit = min(start + max_chars, len(body))
        if limit == len(body):
            end = limit
        else:
            end = None
            # paragraph boundary: position just after the last newline in range
            for i in range(start + 1, limit + 1):
                if body[i - 1] == "\n":
                    end = i
            if end is None:
                for i in range(start + 1, limit + 1):
                    if body[i - 1] in ".!?" and (i == len(body) or body[i] == " "):
                        end = i
                        while end < limit and body[end] == " ":
                            end += 1
            if end is None:
                end = limit
        spans.append((start, end))
        if end >= len(body):
            break
        start = max(end - overlap, start + 1)
    return spans


class TestChunking:
    def test_single_paragraph_boundary_split(self):
        # paragraph break at offset 180 in a 300-char body, max=200
        body = "a" * 179 + "\n" + "b" * 120
        doc = make_doc(body)
        chunks = chunk_document(doc, ChunkingConfig(max_chunk_chars=200, overlap_chars=0))
        assert [c.char_span for c in chunks] == [(0, 180), (180, 300)]

    def test_short_body_single_chunk(self):
        doc = make_doc("short body")
        chunks = chunk_document(doc, ChunkingConfig(max_chunk_chars=200, overlap_chars=0))
        assert len(chunks) == 1
        assert chunks[0].char_span == (0, len(doc.body))

    def test_invalid_config(self):
        doc = make_doc("x")
        with pytest.raises(InvalidConfig):
            chunk_document(doc, ChunkingConfig(max_chunk_chars=32, overlap_chars=0))
        with pytest.raises(InvalidConfig):
            chunk_document(doc, ChunkingConfig(max_chunk_chars=100, overlap_chars=100))

    def test_fact_row_fixture_matches_reference_chunker(self):
        rows = [
            {"city": "Ningbo", "year": 2015 + i, "sector": "Industry",
             "indicator": f"indicator number {i}", "value": 100 + i, "unit": "Mt CO2"}
            for i in range(10)
        ]
        doc = make_doc(rows)
        cfg = ChunkingConfig(max_chunk_chars=120, overlap_chars=0)
        got = [c.char_span for c in chunk_document(doc, cfg)]
        assert got == reference_spans(doc.body, 120, 0)
        assert len(got) > 1

    def test_chunk_ids_and_ordinals(self):
        body = "para one.\npara two.\npara three."
        doc = make_doc(body, doc_id="doc9")
        chunks = chunk_document(doc, ChunkingConfig(max_chunk_chars=64, overlap_chars=0))
        assert [c.chunk_id for c in chunks] == [f"doc9#{i}" for i in range(len(chunks))]

    def test_span_reconstructs_text(self):
        doc = make_doc("Sentence one is here. Sentence two follows. " * 30)
        for c in chunk_document(doc, ChunkingConfig(max_chunk_chars=100, overlap_chars=20)):
            s, e = c.char_span
            assert doc.body[s:e] == c.text

    @settings(max_examples=60, deadline=None)
    @given(
        body=st.text(
            alphabet=st.sampled_from(list("abc .!\n")), min_size=1, max_size=600
        ).filter(lambda t: normalize_text(t)),
        max_chars=st.integers(min_value=64, max_value=200),
        overlap=st.integers(min_value=0, max_value=63),
    )
    def test_coverage_and_determinism(self, body, max_chars, overlap):
        doc = make_doc(body)
        cfg = ChunkingConfig(max_chunk_chars=max_chars, overlap_chars=overlap)
        chunks = chunk_document(doc, cfg)
        # coverage: spans concatenated minus overlaps reproduce the body
        rebuilt = chunks[0].text
        for prev, cur in zip(chunks, chunks[1:]):
            cut = prev.char_span[1] - cur.char_span[0]
            assert cut >= 0
            rebuilt += cur.text[cut:]
        assert rebuilt == doc.body
        assert all(1 <= len(c.text) <= max_chars for c in chunks)
        # determinism
        again = chunk_document(doc, cfg)
        assert [(c.chunk_id, c.char_span, c.text) for c in chunks] == [
            (c.chunk_id, c.char_span, c.text) for c in again
        ]

    def test_metadata_inheritance(self):
        doc = make_doc("plain policy text here.", sub_corpus="Policy", city="Ningbo")
        for c in chunk_document(doc):
            assert c.metadata.sub_corpus == doc.sub_corpus
            assert c.metadata.doc_type == doc.doc_type
            assert c.metadata.city == "Ningbo"

    def test_single_subject_fact_rows_set_metadata(self):
        doc = make_doc([
            {"city": "Ningbo", "year": 2023, "sector": "Industry",
             "indicator": "industrial emissions", "value": 143, "unit": "Mt CO2"},
            {"city": "Ningbo", "year": 2023, "sector": "Industry",
             "indicator": "industrial energy use", "value": 61, "unit": "GWh"},
        ])
        (chunk,) = chunk_document(doc)
        assert chunk.metadata.city == "Ningbo"
        assert chunk.metadata.year == 2023
        assert chunk.metadata.sector == Sector.Industry

    def test_mixed_year_rows_leave_year_unset(self):
        doc = make_doc([
            {"city": "Ningbo", "year": 2022, "indicator": "total CO2 emissions",
             "value": 218, "unit": "Mt CO2"},
            {"city": "Ningbo", "year": 2023, "indicator": "total CO2 emissions",
             "value": 220, "unit": "Mt CO2"},
        ])
        (chunk,) = chunk_document(doc)
        assert chunk.metadata.city == "Ningbo"
        assert chunk.metadata.year is None


class TestFactRows:
    def test_parse_round_trip(self):
        rows = fact_rows_in("Ningbo | 2023 | all | total CO2 emissions | 220 Mt CO2")
        assert len(rows) == 1
        row = rows[0]
        assert row.city == "Ningbo"
        assert row.year == 2023
        assert row.sector == Sector.CrossCutting
        assert row.indicator == "total CO2 emissions"
        assert row.value == 220.0
        assert row.unit == "Mt CO2"

    def test_prose_is_not_a_fact_row(self):
        assert fact_rows_in("This sentence has no pipes at all.") == []


class TestValidate:
    def chunk(self, cid, **meta):
        return Chunk(
            chunk_id=cid, doc_id=cid.split("#")[0], ordinal=0, text="t",
            metadata=ChunkMetadata(**meta), char_span=(0, 1),
        )

    def test_duplicate_ids(self):
        report = validate_corpus([self.chunk("a#0"), self.chunk("a#0")])
        assert not report.ok
        assert report.duplicate_chunk_ids == ["a#0"]

    def test_empty_input_ok(self):
        report = validate_corpus([])
        assert report.ok

    def test_out_of_range_year(self):
        report = validate_corpus([self.chunk("a#0", year=2150)])
        assert not report.ok
        assert report.out_of_range_years == ["a#0"]

    def test_unknown_sector_string(self):
        report = validate_corpus([self.chunk("a#0", sector="aviation")])
        assert not report.ok
        assert report.unknown_sectors == ["a#0"]
