/**
 * Inline citation markers look like "[ningbo-total-emissions#0]": a chunk id
 * in square brackets. The pattern mirrors the one the server uses when it
 * audits its own outputs, so anything the console treats as a citation is
 * something the service will dereference.
 */
const CITATION_RE = /\[([A-Za-z0-9._:-]+#\d+)\]/g;

export type Segment =
  | { kind: 'text'; text: string }
  | { kind: 'citation'; chunkId: string };

/** Split answer text into plain-text runs and citation markers, in order. */
export function splitCitations(text: string): Segment[] {
  const segments: Segment[] = [];
  let last = 0;
  for (const match of text.matchAll(CITATION_RE)) {
    const start = match.index ?? 0;
    if (start > last) {
      segments.push({ kind: 'text', text: text.slice(last, start) });
    }
    segments.push({ kind: 'citation', chunkId: match[1] });
    last = start + match[0].length;
  }
  if (last < text.length) {
    segments.push({ kind: 'text', text: text.slice(last) });
  }
  return segments;
}

/** Unique cited chunk ids in first-appearance order. */
export function citedIds(text: string): string[] {
  const seen = new Set<string>();
  const ids: string[] = [];
  for (const match of text.matchAll(CITATION_RE)) {
    if (!seen.has(match[1])) {
      seen.add(match[1]);
      ids.push(match[1]);
    }
  }
  return ids;
}
