import { vi } from 'vitest';
import type {
  EvidenceDetail,
  JobRecord,
  JobStatus,
  QAAnswer,
  WorkflowResult,
} from '../src/types.js';

/** Minimal Response stand-in covering what the API client reads. */
export function jsonResponse(body: unknown, status = 200): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    statusText: String(status),
    json: async () => body,
  } as unknown as Response;
}

export interface FetchCall {
  url: string;
  init?: RequestInit;
}

/**
 * Replace global fetch with a routing stub. The handler receives the URL
 * and init; every call is logged so tests can assert on request shape.
 */
export function stubFetch(
  handler: (url: string, init?: RequestInit) => Response | Promise<Response>,
): { calls: FetchCall[] } {
  const calls: FetchCall[] = [];
  vi.stubGlobal(
    'fetch',
    vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
      const url = String(input);
      calls.push({ url, init });
      return handler(url, init);
    }),
  );
  return { calls };
}

const metadata = (over: Partial<EvidenceDetail['metadata']> = {}) => ({
  city: 'Ningbo' as string | null,
  year: 2023 as number | null,
  sector: null as string | null,
  doc_type: 'Table' as string | null,
  sub_corpus: 'Emissions' as string | null,
  ...over,
});

const TOTALS_TEXT =
  'Ningbo | 2022 | all | total CO2 emissions | 218 Mt CO2\n' +
  'Ningbo | 2023 | all | total CO2 emissions | 220 Mt CO2';
const PILOT_TEXT =
  'The pilot review, using the built-up-area boundary, reports ' +
  'Ningbo | 2023 | all | total CO2 emissions | 195 Mt CO2.';
const SHARES_TEXT =
  'Ningbo | 2023 | Industry | Industry share of total CO2 emissions | 65 %\n' +
  'Ningbo | 2023 | Transport | Transport share of total CO2 emissions | 18 %';
const PEAKING_TEXT =
  'Ningbo aims to peak carbon emissions around 2025 under its action plan.';

/** What GET /evidence returns per chunk id. */
export const evidenceDetails: Record<string, EvidenceDetail> = {
  'ningbo-total-emissions#0': {
    chunk_id: 'ningbo-total-emissions#0',
    text: TOTALS_TEXT,
    char_span: [0, TOTALS_TEXT.length],
    metadata: metadata({ year: null, sector: 'CrossCutting' }),
    doc_id: 'ningbo-total-emissions',
    doc_title: 'Ningbo municipal CO2 inventory, citywide totals',
    sub_corpus: 'Emissions',
  },
  'ningbo-lowcarbon-pilot-review#0': {
    chunk_id: 'ningbo-lowcarbon-pilot-review#0',
    text: PILOT_TEXT,
    char_span: [0, PILOT_TEXT.length],
    metadata: metadata({ sub_corpus: 'Policy' }),
    doc_id: 'ningbo-lowcarbon-pilot-review',
    doc_title: 'Low-carbon pilot program review, Ningbo built-up area',
    sub_corpus: 'Policy',
  },
  'ningbo-sector-shares#0': {
    chunk_id: 'ningbo-sector-shares#0',
    text: SHARES_TEXT,
    char_span: [0, SHARES_TEXT.length],
    metadata: metadata(),
    doc_id: 'ningbo-sector-shares',
    doc_title: 'Ningbo emissions by sector',
    sub_corpus: 'Emissions',
  },
  'ningbo-peaking-plan#0': {
    chunk_id: 'ningbo-peaking-plan#0',
    text: PEAKING_TEXT,
    char_span: [0, PEAKING_TEXT.length],
    metadata: metadata({ sub_corpus: 'Policy', doc_type: 'PolicyNotice' }),
    doc_id: 'ningbo-peaking-plan',
    doc_title: 'Ningbo carbon peaking action plan',
    sub_corpus: 'Policy',
  },
};

/** Resolve a GET /evidence URL against the fixture table, 404 otherwise. */
export function evidenceRoute(url: string): Response | null {
  const m = url.match(/\/evidence\/(.+)$/);
  if (!m) return null;
  const chunkId = decodeURIComponent(m[1]);
  const detail = evidenceDetails[chunkId];
  if (!detail) {
    return jsonResponse({ detail: `no chunk ${chunkId}` }, 404);
  }
  return jsonResponse(detail);
}

/**
 * A QA answer in the server's shape: the conflict fixture with evidence
 * deliberately out of similarity order so sorting is observable.
 */
export const qaAnswerFixture: QAAnswer = {
  question: 'What are the total CO2 emissions of Ningbo in 2023?',
  answer_text:
    'Ningbo | 2023 | all | total CO2 emissions | 220 Mt CO2 [ningbo-total-emissions#0]. ' +
    'Ningbo | 2023 | all | total CO2 emissions | 195 Mt CO2 [ningbo-lowcarbon-pilot-review#0].',
  evidence: [
    {
      chunk_id: 'ningbo-lowcarbon-pilot-review#0',
      similarity: 0.412345678901,
      metadata: metadata({ sub_corpus: 'Policy' }),
      excerpt: PILOT_TEXT,
    },
    {
      chunk_id: 'ningbo-total-emissions#0',
      similarity: 0.662902177357,
      metadata: metadata({ year: null, sector: 'CrossCutting' }),
      excerpt: TOTALS_TEXT,
    },
    {
      chunk_id: 'ningbo-sector-shares#0',
      similarity: 0.523456789012,
      metadata: metadata(),
      excerpt: SHARES_TEXT,
    },
  ],
  key_numbers: [
    {
      value: 220.0,
      unit: 'Mt CO2',
      indicator: 'total CO2 emissions',
      source_chunk_id: 'ningbo-total-emissions#0',
      city: 'Ningbo',
      year: 2023,
    },
  ],
  flags: [
    {
      kind: 'BoundaryMismatch',
      message:
        'sources disagree on total co2 emissions (ningbo 2023): 195 Mt CO2, 220 Mt CO2',
      involved_chunk_ids: [
        'ningbo-lowcarbon-pilot-review#0',
        'ningbo-total-emissions#0',
      ],
    },
  ],
};

/** A completed Report workflow with an intentionally empty plan section. */
export const workflowResultFixture: WorkflowResult = {
  plan: {
    request: { kind: 'Report', city: 'Ningbo', question: null, constraints: {} },
    stages: [
      { agent: 'Assessment', consumes: [] },
      { agent: 'Planning', consumes: ['Assessment'] },
      { agent: 'Report', consumes: ['Assessment', 'Planning'] },
    ],
  },
  outputs: {
    Assessment: {
      city: 'Ningbo',
      total_emissions: {
        value: 220.0,
        unit: 'Mt CO2',
        indicator: 'total CO2 emissions',
        source_chunk_id: 'ningbo-total-emissions#0',
        city: 'Ningbo',
        year: 2023,
      },
      sector_shares: {
        Industry: { share: 0.65, chunk_ids: ['ningbo-sector-shares#0'] },
        Transport: { share: 0.18, chunk_ids: ['ningbo-sector-shares#0'] },
      },
      trend_stage: 'Rising',
      peaking_status:
        'Ningbo aims to peak carbon emissions around 2025 [ningbo-peaking-plan#0].',
      peaking_year: 2025,
      key_emitters: ['Industry', 'Transport'],
      time_span: [2018, 2023],
      evidence: [],
      flags: [
        {
          kind: 'BoundaryMismatch',
          message:
            'sources disagree on total co2 emissions (ningbo 2023): 195 Mt CO2, 220 Mt CO2',
          involved_chunk_ids: [
            'ningbo-lowcarbon-pilot-review#0',
            'ningbo-total-emissions#0',
          ],
        },
      ],
    },
    Planning: {
      city: 'Ningbo',
      goals: [
        {
          text: 'Peak citywide CO2 emissions around 2025 [ningbo-peaking-plan#0]',
          indicator: 'total CO2 emissions',
          target_year: 2025,
        },
      ],
      sections: {
        SpatialInterventions: [
          {
            text: 'Compact urban form with mixed land use shortens trips [ningbo-peaking-plan#0]',
            sector: null,
            chunk_ids: ['ningbo-peaking-plan#0'],
          },
        ],
        InfrastructureUpgrades: [
          {
            text: 'Electrify port drayage fleets [ningbo-sector-shares#0]',
            sector: 'Transport',
            chunk_ids: ['ningbo-sector-shares#0'],
          },
        ],
        PolicyMechanisms: [
          {
            text: 'Tighten industrial energy-intensity entry thresholds [ningbo-total-emissions#0]',
            sector: 'Industry',
            chunk_ids: ['ningbo-total-emissions#0'],
          },
        ],
        MarketIncentives: [],
        MonitoringEvaluation: [
          {
            text: 'Annual inventory updates against the peaking trajectory [ningbo-peaking-plan#0]',
            sector: null,
            chunk_ids: ['ningbo-peaking-plan#0'],
          },
        ],
      },
      flags: [],
    },
    Report: {
      title: 'Ningbo carbon governance report',
      city: 'Ningbo',
      sections: [
        {
          heading: 'Status',
          paragraphs: [
            'Total CO2 emissions for Ningbo reached 220 Mt CO2 in 2023 [ningbo-total-emissions#0].',
          ],
        },
        {
          heading: 'Problems',
          paragraphs: [
            'BoundaryMismatch: sources disagree on total co2 emissions (ningbo 2023): ' +
              '195 Mt CO2 [ningbo-lowcarbon-pilot-review#0], 220 Mt CO2 [ningbo-total-emissions#0].',
          ],
        },
        {
          heading: 'Targets',
          paragraphs: [
            'Peak citywide CO2 emissions around 2025 [ningbo-peaking-plan#0].',
          ],
        },
        {
          heading: 'Interventions',
          paragraphs: [
            'Tighten industrial energy-intensity entry thresholds [ningbo-total-emissions#0].',
          ],
        },
        {
          heading: 'MonitoringEvaluation',
          paragraphs: [
            'Annual inventory updates against the peaking trajectory [ningbo-peaking-plan#0].',
          ],
        },
        {
          heading: 'Sources',
          paragraphs: ['The register below lists every cited chunk.'],
        },
      ],
      source_register: [
        ['ningbo-lowcarbon-pilot-review#0', 'Low-carbon pilot program review, Ningbo built-up area'],
        ['ningbo-peaking-plan#0', 'Ningbo carbon peaking action plan'],
        ['ningbo-sector-shares#0', 'Ningbo emissions by sector'],
        ['ningbo-total-emissions#0', 'Ningbo municipal CO2 inventory, citywide totals'],
      ],
    },
  },
};

export function jobRecord(
  jobId: string,
  status: JobStatus,
  over: Partial<JobRecord> = {},
): JobRecord {
  return {
    job_id: jobId,
    request: { kind: 'Report', city: 'Ningbo' },
    status,
    result: status === 'Done' ? workflowResultFixture : null,
    error: null,
    created_at: '2026-08-22T10:00:00.000+00:00',
    started_at: status === 'Queued' ? null : '2026-08-22T10:00:00.100+00:00',
    finished_at:
      status === 'Done' || status === 'Failed'
        ? '2026-08-22T10:00:01.000+00:00'
        : null,
    ...over,
  };
}
