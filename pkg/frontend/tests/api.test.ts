import { afterEach, describe, expect, it, vi } from 'vitest';
import { ApiClient, ApiError } from '../src/api.js';
import { jobRecord, jsonResponse, qaAnswerFixture, stubFetch } from './fixtures.js';

afterEach(() => {
  vi.unstubAllGlobals();
});

describe('query', () => {
  it('posts the question and returns the parsed answer', async () => {
    const { calls } = stubFetch(() => jsonResponse(qaAnswerFixture));
    const api = new ApiClient('http://svc');
    const answer = await api.query('total emissions of Ningbo?');
    expect(answer.answer_text).toContain('220 Mt CO2');
    expect(calls).toHaveLength(1);
    expect(calls[0].url).toBe('http://svc/query');
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      question: 'total emissions of Ningbo?',
    });
  });

  it('includes k and filter only when given', async () => {
    const { calls } = stubFetch(() => jsonResponse(qaAnswerFixture));
    const api = new ApiClient('');
    await api.query('q', 3, { city: 'Ningbo', sectors: ['Industry'] });
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      question: 'q',
      k: 3,
      filter: { city: 'Ningbo', sectors: ['Industry'] },
    });
  });

  it('wraps a structured error body into ApiError', async () => {
    stubFetch(() =>
      jsonResponse({ error: 'MissingCity', detail: 'a city is required' }, 400),
    );
    const api = new ApiClient('');
    const err = await api.query('q').catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(400);
    expect(err.message).toContain('a city is required');
  });

  it('uses the detail field of plain HTTP errors', async () => {
    stubFetch(() => jsonResponse({ detail: 'question must not be empty' }, 400));
    const api = new ApiClient('');
    const err = await api.query(' ').catch((e) => e);
    expect(err.message).toBe('question must not be empty');
  });
});

describe('evidence', () => {
  it('percent-encodes the # in chunk ids', async () => {
    const { calls } = stubFetch(() =>
      jsonResponse({ chunk_id: 'a#0', text: 't', char_span: [0, 1] }),
    );
    const api = new ApiClient('http://svc');
    await api.evidence('ningbo-total-emissions#0');
    expect(calls[0].url).toBe('http://svc/evidence/ningbo-total-emissions%230');
  });
});

describe('workflows', () => {
  it('launch returns the job id', async () => {
    const { calls } = stubFetch(() => jsonResponse({ job_id: 'job-abc' }, 202));
    const api = new ApiClient('');
    const jobId = await api.launchWorkflow('Report', 'Ningbo');
    expect(jobId).toBe('job-abc');
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      kind: 'Report',
      city: 'Ningbo',
    });
  });

  it('pollJob reports every observed status and resolves on Done', async () => {
    const sequence = [
      jobRecord('job-1', 'Queued'),
      jobRecord('job-1', 'Running'),
      jobRecord('job-1', 'Done'),
    ];
    let call = 0;
    stubFetch(() => jsonResponse(sequence[Math.min(call++, sequence.length - 1)]));
    const api = new ApiClient('');
    const seen: string[] = [];
    const final = await api.pollJob('job-1', (r) => seen.push(r.status), 1);
    expect(final.status).toBe('Done');
    expect(final.result).not.toBeNull();
    expect(seen).toEqual(['Queued', 'Running', 'Done']);
  });

  it('pollJob resolves (not rejects) on Failed so callers can render the error', async () => {
    stubFetch(() =>
      jsonResponse(jobRecord('job-2', 'Failed', { error: 'backend down' })),
    );
    const api = new ApiClient('');
    const final = await api.pollJob('job-2', undefined, 1);
    expect(final.status).toBe('Failed');
    expect(final.error).toBe('backend down');
  });
});
