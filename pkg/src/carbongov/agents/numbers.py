"""Key-number extraction and the verbatim-in-source audit.

Numbers worth surfacing are the ones the corpus states as structured
fact-rows. Prose numerals stay out of KeyNumber extraction: they lack an
indicator and a unit can only be guessed, which would poison the conflict
detector with spurious groups.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from ..corpus import fact_rows_in
from ..numutil import canonical_unit, extract_numbers, value_appears_verbatim, values_close
from .types import EvidenceItem, KeyNumber


def fact_row_key_numbers(evidence: Sequence[EvidenceItem]) -> list[KeyNumber]:
    """All fact-row numbers stated by the given evidence chunks.

    Deduplicates repeats of the same (chunk, indicator, year, value, unit)
    tuple, which occur when overlapping chunks both cover a row.
    """
    seen = set()
    out: list[KeyNumber] = []
    for item in evidence:
        for row in fact_rows_in(item.excerpt):
            key = (item.chunk_id, row.indicator.casefold(), row.year, row.value,
                   canonical_unit(row.unit))
            if key in seen:
                continue
            seen.add(key)
            out.append(KeyNumber(
                value=row.value,
                unit=canonical_unit(row.unit),
                indicator=row.indicator,
                source_chunk_id=item.chunk_id,
                city=row.city,
                year=row.year,
            ))
    return out


def verify_key_number(kn: KeyNumber, chunk_text: str) -> bool:
    """The rendered value must appear verbatim in the source chunk text,
    allowing thousand separators and unit aliases."""
    return value_appears_verbatim(chunk_text, kn.value, kn.unit)


def numbers_in_answer(
    answer_text: str,
    evidence: Sequence[EvidenceItem],
    cited_ids: Iterable[str],
) -> list[KeyNumber]:
    """Fact-row numbers that the answer actually states, from cited chunks."""
    cited = set(cited_ids)
    mentions = extract_numbers(answer_text)
    picked = []
    for kn in fact_row_key_numbers([e for e in evidence if e.chunk_id in cited]):
        for m in mentions:
            if values_close(m.value, kn.value, 1e-9) and (m.unit == "" or m.unit == kn.unit):
                picked.append(kn)
                break
    return picked
