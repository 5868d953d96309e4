import { ApiClient } from './api.js';
import { clear, el } from './dom.js';
import { formatMetadata } from './format.js';

/**
 * Detail view for a single evidence chunk, resolved live from the service.
 * The displayed text is exactly what GET /evidence returned; when a caller
 * supplies the excerpt it already holds, that region is highlighted inside
 * the full chunk text.
 */
export class EvidencePane {
  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.root.classList.add('evidence-pane');
  }

  async show(chunkId: string, excerpt?: string): Promise<void> {
    clear(this.root);
    this.root.append(el('p', { class: 'muted' }, [`resolving ${chunkId}...`]));
    try {
      const detail = await this.api.evidence(chunkId);
      clear(this.root);
      this.root.append(
        el('div', { class: 'evidence-detail', 'data-chunk-id': detail.chunk_id }, [
          el('h4', {}, [detail.doc_title]),
          el('p', { class: 'muted' }, [
            `${detail.chunk_id} · ${formatMetadata(detail.metadata)}`,
          ]),
          this.renderText(detail.text, excerpt),
        ]),
      );
    } catch (err) {
      clear(this.root);
      this.root.append(
        el('p', { class: 'error-text' }, [
          err instanceof Error ? err.message : String(err),
        ]),
      );
    }
  }

  private renderText(text: string, excerpt?: string): HTMLElement {
    const pre = el('pre', { class: 'evidence-text' });
    const at = excerpt ? text.indexOf(excerpt) : -1;
    if (excerpt && at >= 0) {
      pre.append(text.slice(0, at));
      pre.append(el('mark', {}, [excerpt]));
      pre.append(text.slice(at + excerpt.length));
    } else {
      pre.append(text);
    }
    return pre;
  }
}
