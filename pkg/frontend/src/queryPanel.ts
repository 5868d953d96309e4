import { ApiClient } from './api.js';
import { clear, el } from './dom.js';
import { EvidencePane } from './evidencePane.js';
import { formatKeyNumber, formatMetadata, formatSimilarity } from './format.js';
import { chunkLink, renderFlagBadge, renderRichText } from './render.js';
import type { QAAnswer, UncertaintyFlag } from './types.js';

const CONFLICT_KINDS = new Set(['BoundaryMismatch', 'ConflictingEvidence']);

/**
 * Interactive Q&A: question in, cited answer out. The answer sits on the
 * left, the evidence that backs it on the right, so checking grounding is
 * one click away. Citations and evidence rows resolve through the service's
 * evidence endpoint; flags render as badges that cannot be missed.
 */
export class QueryPanel {
  private readonly input: HTMLInputElement;
  private readonly askButton: HTMLButtonElement;
  private readonly errorBanner: HTMLElement;
  private readonly resultWrap: HTMLElement;
  private readonly flagArea: HTMLElement;
  private readonly answerArea: HTMLElement;
  private readonly flagDetail: HTMLElement;
  private readonly keyNumbersArea: HTMLElement;
  private readonly evidenceList: HTMLElement;
  private readonly detailPane: EvidencePane;
  private answer: QAAnswer | null = null;

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.input = el('input', {
      class: 'question-input',
      type: 'text',
      placeholder: 'Ask a factual question, e.g. total CO2 emissions of Ningbo in 2023',
    });
    this.askButton = el('button', { class: 'ask-button', type: 'submit' }, ['Ask']);
    const form = el('form', { class: 'query-form' }, [this.input, this.askButton]);
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      void this.submit();
    });

    this.errorBanner = el('div', { class: 'error-banner hidden', role: 'alert' });
    this.flagArea = el('div', { class: 'flag-area' });
    this.answerArea = el('div', { class: 'answer-text' });
    this.flagDetail = el('div', { class: 'flag-detail hidden' });
    this.keyNumbersArea = el('div', { class: 'key-numbers' });
    this.evidenceList = el('ul', { class: 'evidence-list' });
    const detailSlot = el('div', {});
    this.detailPane = new EvidencePane(detailSlot, api);

    this.resultWrap = el('div', { class: 'query-result hidden' }, [
      el('div', { class: 'answer-col' }, [
        this.flagArea,
        this.answerArea,
        this.flagDetail,
        this.keyNumbersArea,
      ]),
      el('div', { class: 'evidence-col' }, [
        el('h3', {}, ['Evidence']),
        this.evidenceList,
        detailSlot,
      ]),
    ]);

    root.append(form, this.errorBanner, this.resultWrap);
  }

  async submit(): Promise<void> {
    const question = this.input.value.trim();
    if (!question) {
      this.showError('Enter a question first.');
      return;
    }
    this.askButton.disabled = true;
    try {
      const answer = await this.api.query(question);
      this.hideError();
      this.renderAnswer(answer);
    } catch (err) {
      // The question stays in the input untouched so retry is one click.
      this.showError(err instanceof Error ? err.message : String(err));
    } finally {
      this.askButton.disabled = false;
    }
  }

  private showError(message: string): void {
    clear(this.errorBanner);
    const retry = el('button', { class: 'retry-button', type: 'button' }, ['Retry']);
    retry.addEventListener('click', () => void this.submit());
    this.errorBanner.append(el('span', {}, [message]), retry);
    this.errorBanner.classList.remove('hidden');
  }

  private hideError(): void {
    this.errorBanner.classList.add('hidden');
    clear(this.errorBanner);
  }

  private renderAnswer(answer: QAAnswer): void {
    this.answer = answer;
    this.resultWrap.classList.remove('hidden');
    this.flagDetail.classList.add('hidden');
    clear(this.flagDetail);

    clear(this.flagArea);
    for (const flag of answer.flags) {
      this.flagArea.append(renderFlagBadge(flag, (f) => void this.openFlag(f)));
    }

    clear(this.answerArea);
    this.answerArea.append(
      renderRichText(answer.answer_text, (id) => void this.selectEvidence(id)),
    );

    clear(this.keyNumbersArea);
    if (answer.key_numbers.length > 0) {
      const rows = answer.key_numbers.map((kn) =>
        el('tr', {}, [
          el('td', { class: 'kn-value' }, [formatKeyNumber(kn)]),
          el('td', {}, [kn.indicator]),
          el('td', { class: 'muted' }, [
            [kn.city, kn.year === null ? null : String(kn.year)]
              .filter((p): p is string => p !== null)
              .join(' '),
          ]),
          el('td', {}, [chunkLink(kn.source_chunk_id, (id) => void this.selectEvidence(id))]),
        ]),
      );
      this.keyNumbersArea.append(
        el('h3', {}, ['Key numbers']),
        el('table', { class: 'key-number-table' }, [el('tbody', {}, rows)]),
      );
    }

    clear(this.evidenceList);
    const sorted = [...answer.evidence].sort((a, b) => b.similarity - a.similarity);
    for (const item of sorted) {
      const row = el('li', { class: 'evidence-row', 'data-chunk-id': item.chunk_id }, [
        el('div', { class: 'evidence-row-head' }, [
          el('span', { class: 'similarity' }, [formatSimilarity(item.similarity)]),
          el('span', { class: 'chunk-id' }, [item.chunk_id]),
        ]),
        el('div', { class: 'muted' }, [formatMetadata(item.metadata)]),
        el('div', { class: 'excerpt' }, [item.excerpt]),
      ]);
      row.addEventListener('click', () => void this.selectEvidence(item.chunk_id));
      this.evidenceList.append(row);
    }
  }

  /** Highlight the sidebar row and resolve the chunk through the service. */
  async selectEvidence(chunkId: string): Promise<void> {
    for (const row of this.evidenceList.querySelectorAll('.evidence-row')) {
      row.classList.toggle(
        'selected',
        row.getAttribute('data-chunk-id') === chunkId,
      );
    }
    const item = this.answer?.evidence.find((e) => e.chunk_id === chunkId);
    await this.detailPane.show(chunkId, item?.excerpt);
  }

  /**
   * Conflict flags open a side-by-side comparison of the disagreeing
   * chunks; other flags show their message with links to the involved
   * evidence.
   */
  async openFlag(flag: UncertaintyFlag): Promise<void> {
    clear(this.flagDetail);
    this.flagDetail.classList.remove('hidden');
    this.flagDetail.append(el('p', { class: 'flag-message' }, [flag.message]));

    if (CONFLICT_KINDS.has(flag.kind) && flag.involved_chunk_ids.length >= 2) {
      const grid = el('div', { class: 'conflict-compare' });
      for (const id of flag.involved_chunk_ids) {
        const col = el('div', { class: 'conflict-col', 'data-chunk-id': id });
        try {
          const detail = await this.api.evidence(id);
          col.append(
            el('h4', {}, [detail.doc_title]),
            el('p', { class: 'muted' }, [
              `${detail.chunk_id} · ${formatMetadata(detail.metadata)}`,
            ]),
            el('pre', { class: 'evidence-text' }, [detail.text]),
          );
        } catch (err) {
          col.append(
            el('p', { class: 'error-text' }, [
              err instanceof Error ? err.message : String(err),
            ]),
          );
        }
        grid.append(col);
      }
      this.flagDetail.append(grid);
    } else {
      const links = el('div', { class: 'flag-links' });
      for (const id of flag.involved_chunk_ids) {
        links.append(chunkLink(id, (cid) => void this.selectEvidence(cid)));
      }
      this.flagDetail.append(links);
    }
  }
}
