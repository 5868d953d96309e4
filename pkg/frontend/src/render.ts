import { splitCitations } from './citations.js';
import { el } from './dom.js';
import type { UncertaintyFlag } from './types.js';

/**
 * Render server text with inline citation markers turned into buttons.
 * The marker text itself is kept verbatim so the display stays a faithful
 * copy of what the service produced.
 */
export function renderRichText(
  text: string,
  onCite: (chunkId: string) => void,
): HTMLElement {
  const span = el('span', { class: 'rich-text' });
  for (const segment of splitCitations(text)) {
    if (segment.kind === 'text') {
      span.append(segment.text);
    } else {
      const btn = el(
        'button',
        { class: 'citation', type: 'button', 'data-chunk-id': segment.chunkId },
        [`[${segment.chunkId}]`],
      );
      btn.addEventListener('click', () => onCite(segment.chunkId));
      span.append(btn);
    }
  }
  return span;
}

/** A prominent badge for one uncertainty flag; clicking opens its detail. */
export function renderFlagBadge(
  flag: UncertaintyFlag,
  onOpen: (flag: UncertaintyFlag) => void,
): HTMLElement {
  const btn = el(
    'button',
    {
      class: `flag-badge kind-${flag.kind}`,
      type: 'button',
      title: flag.message,
      'data-flag-kind': flag.kind,
    },
    [flag.kind],
  );
  btn.addEventListener('click', () => onOpen(flag));
  return btn;
}

/** Small clickable chip linking to a chunk id. */
export function chunkLink(
  chunkId: string,
  onCite: (chunkId: string) => void,
): HTMLElement {
  const btn = el(
    'button',
    { class: 'chunk-link', type: 'button', 'data-chunk-id': chunkId },
    [chunkId],
  );
  btn.addEventListener('click', () => onCite(chunkId));
  return btn;
}
