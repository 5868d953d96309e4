import type {
  EvidenceDetail,
  FilterSpec,
  HealthInfo,
  JobRecord,
  QAAnswer,
  WorkflowKind,
} from './types.js';

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

const TERMINAL_STATUSES = new Set(['Done', 'Failed']);

async function errorMessage(res: Response): Promise<string> {
  try {
    const body = await res.json();
    if (typeof body.detail === 'string') return body.detail;
    if (typeof body.error === 'string') {
      return body.detail ? `${body.error}: ${body.detail}` : body.error;
    }
  } catch {
    // non-JSON error body, fall through to the status line
  }
  return `${res.status} ${res.statusText}`;
}

/**
 * Thin fetch wrapper over the service endpoints. All methods throw ApiError
 * on a non-2xx response and plain errors (TypeError from fetch) when the
 * service is unreachable.
 */
export class ApiClient {
  constructor(private readonly baseUrl: string = '') {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await fetch(this.baseUrl + path, init);
    if (!res.ok) {
      throw new ApiError(await errorMessage(res), res.status);
    }
    return (await res.json()) as T;
  }

  health(): Promise<HealthInfo> {
    return this.request('/health');
  }

  query(question: string, k?: number, filter?: FilterSpec): Promise<QAAnswer> {
    const body: Record<string, unknown> = { question };
    if (k !== undefined) body.k = k;
    if (filter !== undefined) body.filter = filter;
    return this.request('/query', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  /** Chunk ids contain '#', which must not reach the URL fragment parser. */
  evidence(chunkId: string): Promise<EvidenceDetail> {
    return this.request(`/evidence/${encodeURIComponent(chunkId)}`);
  }

  async launchWorkflow(kind: WorkflowKind, city: string): Promise<string> {
    const res = await this.request<{ job_id: string }>('/workflows', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ kind, city }),
    });
    return res.job_id;
  }

  getJob(jobId: string): Promise<JobRecord> {
    return this.request(`/workflows/${encodeURIComponent(jobId)}`);
  }

  /**
   * Poll a job until it reaches Done or Failed. Every observed record is
   * passed to onUpdate so the caller can keep a status chip current.
   */
  async pollJob(
    jobId: string,
    onUpdate?: (record: JobRecord) => void,
    intervalMs = 600,
  ): Promise<JobRecord> {
    for (;;) {
      const record = await this.getJob(jobId);
      if (onUpdate) onUpdate(record);
      if (TERMINAL_STATUSES.has(record.status)) {
        return record;
      }
      await new Promise((resolve) => setTimeout(resolve, intervalMs));
    }
  }
}
