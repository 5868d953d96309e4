import type { ChunkMetadata, KeyNumber, ReportDocument } from './types.js';

export function formatSimilarity(similarity: number): string {
  return similarity.toFixed(4);
}

/** "0.65" -> "65%"; purely a representation change of the server value. */
export function formatShare(share: number): string {
  return `${Math.round(share * 100)}%`;
}

/** Bar width for a sector share, clamped to the 0..100 CSS percent range. */
export function shareBarWidth(share: number): string {
  const pct = Math.max(0, Math.min(100, share * 100));
  return `${pct}%`;
}

export function formatMetadata(md: ChunkMetadata): string {
  const parts: string[] = [];
  if (md.city) parts.push(md.city);
  if (md.year !== null) parts.push(String(md.year));
  if (md.sector) parts.push(md.sector);
  if (md.sub_corpus) parts.push(md.sub_corpus);
  return parts.join(' · ');
}

export function formatKeyNumber(kn: KeyNumber): string {
  return `${kn.value} ${kn.unit}`.trim();
}

/**
 * Assemble a standalone markdown document from a server report. Every line
 * is server-provided text; this only adds markdown structure around it.
 */
export function buildReportExport(doc: ReportDocument): string {
  const lines: string[] = [`# ${doc.title}`, ''];
  for (const section of doc.sections) {
    lines.push(`## ${section.heading}`, '');
    for (const paragraph of section.paragraphs) {
      lines.push(paragraph, '');
    }
  }
  if (doc.source_register.length > 0) {
    lines.push('## Source register', '');
    for (const [chunkId, title] of doc.source_register) {
      lines.push(`- [${chunkId}] ${title}`);
    }
    lines.push('');
  }
  return lines.join('\n');
}

export function exportFileName(doc: ReportDocument): string {
  const slug = doc.city.toLowerCase().replace(/[^a-z0-9]+/g, '-');
  return `${slug}-governance-report.md`;
}
