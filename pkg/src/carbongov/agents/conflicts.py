"""Numeric conflict detection across sources."""
from __future__ import annotations

from typing import Mapping, Sequence

from ..corpus import SubCorpus
from ..numutil import format_value
from .types import FlagKind, KeyNumber, UncertaintyFlag

DEFAULT_REL_TOL = 0.01


def _group_key(kn: KeyNumber):
    return (
        kn.city.casefold() if kn.city else None,
        kn.year,
        kn.indicator.casefold(),
        kn.unit,
    )


def detect_numeric_conflicts(
    items: Sequence[KeyNumber],
    rel_tol: float = DEFAULT_REL_TOL,
    sub_corpus_by_chunk: Mapping[str, SubCorpus | None] | None = None,
) -> list[UncertaintyFlag]:
    """One flag per (city, year, indicator, unit) group whose values spread
    wider than rel_tol relative. Groups whose members straddle sub-corpus
    boundaries flag as BoundaryMismatch, the usual signature of mismatched
    accounting scopes rather than simple disagreement.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    groups: dict[tuple, list[KeyNumber]] = {}
    for kn in items:
        groups.setdefault(_group_key(kn), []).append(kn)

    flags = []
    for key, members in sorted(groups.items(), key=lambda kv: repr(kv[0])):
        ids = sorted({m.source_chunk_id for m in members})
        if len(ids) < 2:
            continue
        values = [m.value for m in members]
        vmin, vmax = min(values), max(values)
        if vmin == vmax:
            continue
        if vmin <= 0:
            conflicting = True  # sign change or a zero against a nonzero
        else:
            conflicting = (vmax / vmin) - 1.0 > rel_tol
        if not conflicting:
            continue
        city, year, indicator, unit = key
        kind = FlagKind.ConflictingEvidence
        if sub_corpus_by_chunk is not None:
            corpora = {sub_corpus_by_chunk.get(cid) for cid in ids}
            corpora.discard(None)
            if len(corpora) >= 2:
                kind = FlagKind.BoundaryMismatch
        shown = ", ".join(format_value(v) + " " + unit for v in sorted(set(values)))
        where = " ".join(str(p) for p in (city, year) if p is not None)
        message = f"sources disagree on {indicator} ({where}): {shown}"
        flags.append(UncertaintyFlag(kind=kind, message=message, involved_chunk_ids=tuple(ids)))
    return flags
