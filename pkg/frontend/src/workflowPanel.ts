import { ApiClient } from './api.js';
import { clear, el } from './dom.js';
import { EvidencePane } from './evidencePane.js';
import {
  buildReportExport,
  exportFileName,
  formatKeyNumber,
  formatShare,
  shareBarWidth,
} from './format.js';
import { chunkLink, renderFlagBadge, renderRichText } from './render.js';
import type {
  AssessmentDiagnostics,
  GovernancePlan,
  JobRecord,
  ReportDocument,
  UncertaintyFlag,
  WorkflowKind,
  WorkflowResult,
} from './types.js';
import { PLAN_SECTION_ORDER } from './types.js';

type SaveFile = (name: string, text: string) => void;

const STAGE_ORDER = ['Assessment', 'Planning', 'Report'] as const;
type StageName = (typeof STAGE_ORDER)[number];

function defaultSaveFile(name: string, text: string): void {
  if (typeof URL.createObjectURL !== 'function') return;
  const blob = new Blob([text], { type: 'text/markdown' });
  const url = URL.createObjectURL(blob);
  const a = document.createElement('a');
  a.href = url;
  a.download = name;
  a.click();
  URL.revokeObjectURL(url);
}

interface TrackedJob {
  jobId: string;
  label: string;
  row: HTMLElement;
  chip: HTMLElement;
  record: JobRecord | null;
}

/**
 * Launch Assess / Plan / Report workflows for a city and review the results
 * as they land. Jobs run server-side; this panel polls each one and keeps
 * every launched job in the list so concurrent runs stay visible.
 */
export class WorkflowPanel {
  private readonly cityInput: HTMLInputElement;
  private readonly kindSelect: HTMLSelectElement;
  private readonly launchButton: HTMLButtonElement;
  private readonly errorBanner: HTMLElement;
  private readonly jobList: HTMLElement;
  private readonly stageTabs: HTMLElement;
  private readonly stageView: HTMLElement;
  private readonly drawer: EvidencePane;
  private readonly saveFile: SaveFile;
  private readonly jobs = new Map<string, TrackedJob>();
  private selectedJobId: string | null = null;
  readonly pollIntervalMs: number;

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient,
    opts: { saveFile?: SaveFile; pollIntervalMs?: number } = {},
  ) {
    this.saveFile = opts.saveFile ?? defaultSaveFile;
    this.pollIntervalMs = opts.pollIntervalMs ?? 600;

    this.cityInput = el('input', {
      class: 'city-input',
      type: 'text',
      placeholder: 'City, e.g. Ningbo',
    });
    this.kindSelect = el('select', { class: 'kind-select' }, [
      el('option', { value: 'Assess' }, ['Assess']),
      el('option', { value: 'Plan' }, ['Plan']),
      el('option', { value: 'Report' }, ['Report']),
    ]);
    this.launchButton = el('button', { class: 'launch-button', type: 'submit' }, [
      'Launch',
    ]);
    const form = el('form', { class: 'workflow-form' }, [
      this.cityInput,
      this.kindSelect,
      this.launchButton,
    ]);
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      void this.launch();
    });

    this.errorBanner = el('div', { class: 'error-banner hidden', role: 'alert' });
    this.jobList = el('ul', { class: 'job-list' });
    this.stageTabs = el('div', { class: 'stage-tabs' });
    this.stageView = el('div', { class: 'stage-view' });
    const drawerSlot = el('div', { class: 'evidence-drawer' });
    this.drawer = new EvidencePane(drawerSlot, api);

    root.append(form, this.errorBanner, this.jobList, this.stageTabs, this.stageView, drawerSlot);
  }

  async launch(): Promise<void> {
    const city = this.cityInput.value.trim();
    const kind = this.kindSelect.value as WorkflowKind;
    if (!city) {
      this.showError('Enter a city first.');
      return;
    }
    this.launchButton.disabled = true;
    try {
      const jobId = await this.api.launchWorkflow(kind, city);
      this.hideError();
      this.track(jobId, `${kind} · ${city}`);
    } catch (err) {
      this.showError(err instanceof Error ? err.message : String(err));
    } finally {
      this.launchButton.disabled = false;
    }
  }

  private showError(message: string): void {
    clear(this.errorBanner);
    this.errorBanner.append(message);
    this.errorBanner.classList.remove('hidden');
  }

  private hideError(): void {
    this.errorBanner.classList.add('hidden');
    clear(this.errorBanner);
  }

  /** Add a job row and start polling it; each job polls independently. */
  private track(jobId: string, label: string): void {
    const chip = el('span', { class: 'status-chip status-Queued' }, ['Queued']);
    const row = el('li', { class: 'job-row', 'data-job-id': jobId }, [
      el('span', { class: 'job-label' }, [label]),
      chip,
    ]);
    const job: TrackedJob = { jobId, label, row, chip, record: null };
    row.addEventListener('click', () => this.select(jobId));
    this.jobs.set(jobId, job);
    this.jobList.append(row);
    this.select(jobId);

    void this.api
      .pollJob(jobId, (record) => this.applyUpdate(job, record), this.pollIntervalMs)
      .catch((err) => {
        job.chip.textContent = 'Failed';
        job.chip.className = 'status-chip status-Failed';
        job.row.append(
          el('span', { class: 'error-text' }, [
            err instanceof Error ? err.message : String(err),
          ]),
        );
      });
  }

  private applyUpdate(job: TrackedJob, record: JobRecord): void {
    job.record = record;
    job.chip.textContent = record.status;
    job.chip.className = `status-chip status-${record.status}`;
    if (record.status === 'Failed' && record.error) {
      if (!job.row.querySelector('.error-text')) {
        job.row.append(el('span', { class: 'error-text' }, [record.error]));
      }
    }
    if (this.selectedJobId === job.jobId) {
      this.renderSelected();
    }
  }

  private select(jobId: string): void {
    this.selectedJobId = jobId;
    for (const job of this.jobs.values()) {
      job.row.classList.toggle('selected', job.jobId === jobId);
    }
    this.renderSelected();
  }

  private renderSelected(): void {
    clear(this.stageTabs);
    clear(this.stageView);
    const job = this.selectedJobId ? this.jobs.get(this.selectedJobId) : null;
    if (!job) return;
    const record = job.record;
    if (!record || record.status === 'Queued' || record.status === 'Running') {
      this.stageView.append(
        el('p', { class: 'muted' }, [`${job.label}: ${record?.status ?? 'Queued'}...`]),
      );
      return;
    }
    if (record.status === 'Failed') {
      this.stageView.append(
        el('div', { class: 'job-failed' }, [
          el('strong', {}, [`${job.label} failed`]),
          el('p', { class: 'error-text' }, [record.error ?? 'unknown error']),
        ]),
      );
      return;
    }
    if (!record.result) return;
    this.renderOutputs(record.result);
  }

  private renderOutputs(result: WorkflowResult): void {
    const present = STAGE_ORDER.filter((name) => result.outputs[name] !== undefined);
    if (present.length === 0) return;
    // The last stage is the workflow's deliverable; open on it.
    let active: StageName = present[present.length - 1];

    const renderActive = () => {
      clear(this.stageView);
      for (const btn of this.stageTabs.querySelectorAll('.stage-tab')) {
        btn.classList.toggle('active', btn.getAttribute('data-stage') === active);
      }
      const outputs = result.outputs;
      if (active === 'Assessment' && outputs.Assessment) {
        this.renderAssessment(outputs.Assessment);
      } else if (active === 'Planning' && outputs.Planning) {
        this.renderPlanning(outputs.Planning);
      } else if (active === 'Report' && outputs.Report) {
        this.renderReport(outputs.Report);
      }
    };

    clear(this.stageTabs);
    for (const name of present) {
      const btn = el(
        'button',
        { class: 'stage-tab', type: 'button', 'data-stage': name },
        [name],
      );
      btn.addEventListener('click', () => {
        active = name;
        renderActive();
      });
      this.stageTabs.append(btn);
    }
    renderActive();
  }

  private cite = (chunkId: string): void => {
    void this.drawer.show(chunkId);
  };

  private flagRow(flags: UncertaintyFlag[]): HTMLElement {
    const area = el('div', { class: 'flag-area' });
    for (const flag of flags) {
      area.append(
        renderFlagBadge(flag, (f) => {
          if (f.involved_chunk_ids.length > 0) {
            this.cite(f.involved_chunk_ids[0]);
          }
        }),
      );
    }
    return area;
  }

  private renderAssessment(diag: AssessmentDiagnostics): void {
    const wrap = el('div', { class: 'assessment-view' });
    wrap.append(el('h3', {}, [`${diag.city} status assessment`]));
    wrap.append(this.flagRow(diag.flags));

    const facts = el('dl', { class: 'fact-list' });
    const fact = (label: string, value: Node | string) => {
      facts.append(el('dt', {}, [label]), el('dd', {}, [value]));
    };
    if (diag.total_emissions) {
      const kn = diag.total_emissions;
      fact(
        'Total emissions',
        el('span', {}, [
          `${formatKeyNumber(kn)}${kn.year === null ? '' : ` (${kn.year})`} `,
          chunkLink(kn.source_chunk_id, this.cite),
        ]),
      );
    }
    fact('Trend stage', diag.trend_stage);
    if (diag.time_span) {
      fact('Time span', `${diag.time_span[0]} to ${diag.time_span[1]}`);
    }
    if (diag.peaking_year !== null) {
      fact('Peaking year', String(diag.peaking_year));
    }
    if (diag.key_emitters.length > 0) {
      fact('Key emitters', diag.key_emitters.join(', '));
    }
    wrap.append(facts);
    if (diag.peaking_status) {
      wrap.append(
        el('p', { class: 'peaking-status' }, [
          renderRichText(diag.peaking_status, this.cite),
        ]),
      );
    }

    const shares = el('div', { class: 'share-bars' });
    for (const [sector, share] of Object.entries(diag.sector_shares)) {
      const links = el('span', { class: 'share-links' });
      for (const id of share.chunk_ids) {
        links.append(chunkLink(id, this.cite));
      }
      const bar = el('div', { class: 'share-bar' });
      bar.style.width = shareBarWidth(share.share);
      shares.append(
        el('div', { class: 'share-row', 'data-sector': sector }, [
          el('span', { class: 'share-label' }, [sector]),
          el('div', { class: 'share-track' }, [bar]),
          el('span', { class: 'share-value' }, [formatShare(share.share)]),
          links,
        ]),
      );
    }
    wrap.append(el('h4', {}, ['Sector shares']), shares);
    this.stageView.append(wrap);
  }

  private renderPlanning(plan: GovernancePlan): void {
    const wrap = el('div', { class: 'plan-view' });
    wrap.append(el('h3', {}, [`${plan.city} governance plan`]));
    wrap.append(this.flagRow(plan.flags));

    if (plan.goals.length > 0) {
      const goals = el('ul', { class: 'goal-list' });
      for (const goal of plan.goals) {
        const li = el('li', {}, [renderRichText(goal.text, this.cite)]);
        if (goal.target_year !== null) {
          li.append(el('span', { class: 'goal-year' }, [` (by ${goal.target_year})`]));
        }
        goals.append(li);
      }
      wrap.append(el('h4', {}, ['Goals']), goals);
    }

    for (const section of PLAN_SECTION_ORDER) {
      const recs = plan.sections[section] ?? [];
      const head = el('h4', { class: 'plan-section-head' }, [section]);
      const body = el('div', { class: 'plan-section', 'data-section': section });
      if (recs.length === 0) {
        head.append(
          el('span', { class: 'flag-badge kind-InsufficientEvidence' }, [
            'InsufficientEvidence',
          ]),
        );
        body.append(
          el('p', { class: 'muted' }, ['No grounded recommendations for this section.']),
        );
      } else {
        const list = el('ul', { class: 'rec-list' });
        for (const rec of recs) {
          const li = el('li', {}, [renderRichText(rec.text, this.cite)]);
          if (rec.sector) {
            li.append(el('span', { class: 'sector-chip' }, [rec.sector]));
          }
          for (const id of rec.chunk_ids) {
            li.append(' ', chunkLink(id, this.cite));
          }
          list.append(li);
        }
        body.append(list);
      }
      wrap.append(head, body);
    }
    this.stageView.append(wrap);
  }

  private renderReport(doc: ReportDocument): void {
    const wrap = el('div', { class: 'report-view' });
    const exportBtn = el('button', { class: 'export-button', type: 'button' }, [
      'Export markdown',
    ]);
    exportBtn.addEventListener('click', () => {
      this.saveFile(exportFileName(doc), buildReportExport(doc));
    });
    wrap.append(
      el('div', { class: 'report-head' }, [el('h3', {}, [doc.title]), exportBtn]),
    );

    const nav = el('nav', { class: 'report-nav' });
    const content = el('div', { class: 'report-content' });
    let activeHeading = doc.sections[0]?.heading ?? '';

    const renderSection = () => {
      clear(content);
      for (const btn of nav.querySelectorAll('.report-nav-btn')) {
        btn.classList.toggle('active', btn.getAttribute('data-heading') === activeHeading);
      }
      const section = doc.sections.find((s) => s.heading === activeHeading);
      if (!section) return;
      const block = el('section', { class: 'report-section', 'data-heading': section.heading });
      block.append(el('h4', {}, [section.heading]));
      for (const paragraph of section.paragraphs) {
        block.append(el('p', {}, [renderRichText(paragraph, this.cite)]));
      }
      if (section.heading === 'Sources') {
        const register = el('ul', { class: 'source-register' });
        for (const [chunkId, title] of doc.source_register) {
          register.append(el('li', {}, [chunkLink(chunkId, this.cite), ` ${title}`]));
        }
        block.append(register);
      }
      content.append(block);
    };

    for (const section of doc.sections) {
      const btn = el(
        'button',
        { class: 'report-nav-btn', type: 'button', 'data-heading': section.heading },
        [section.heading],
      );
      btn.addEventListener('click', () => {
        activeHeading = section.heading;
        renderSection();
      });
      nav.append(btn);
    }
    renderSection();
    wrap.append(nav, content);
    this.stageView.append(wrap);
  }
}
