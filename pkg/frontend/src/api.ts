// Typed client for the qratio JSON service, including job polling with
// exponential backoff and cooperative cancellation.

import type {
  ApiErrorBody,
  IntervalPayload,
  JobResponse,
  OptimalPResponse,
  ResultRow,
  SimulateRequest,
  SimulateResponse,
  TestPayload,
} from './types.js';

export class ApiError extends Error {
  constructor(readonly status: number, readonly code: string, message: string) {
    super(message);
    this.name = 'ApiError';
  }
}

export class CancelledError extends Error {
  constructor() {
    super('cancelled');
    this.name = 'CancelledError';
  }
}

export interface CancelToken {
  cancelled: boolean;
}

export interface EstimateRequest {
  x: number[];
  y: number[];
  method: string;
  p?: number;
  alpha?: number;
  bandwidth?: string | number;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;
type SleepLike = (ms: number) => Promise<void>;

const defaultSleep: SleepLike = (ms) => new Promise((resolve) => setTimeout(resolve, ms));

export interface PollOptions {
  token?: CancelToken;
  onPoll?: (attempt: number, delayMs: number) => void;
}

export const POLL_INITIAL_MS = 500;
export const POLL_FACTOR = 1.5;
export const POLL_MAX_MS = 5000;

export class ApiClient {
  constructor(
    private readonly baseUrl = '',
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
    private readonly sleep: SleepLike = defaultSleep,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      body = null;
    }
    if (!response.ok) {
      const err = (body ?? {}) as Partial<ApiErrorBody>;
      throw new ApiError(response.status, err.code ?? 'http', err.message ?? response.statusText);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(payload),
    });
  }

  estimate(req: EstimateRequest): Promise<IntervalPayload | TestPayload> {
    return this.post('/api/estimate', req);
  }

  simulate(req: SimulateRequest): Promise<SimulateResponse> {
    return this.post('/api/simulate', req);
  }

  job(jobId: string): Promise<JobResponse> {
    return this.request(`/api/jobs/${jobId}`);
  }

  optimalP(dist: string): Promise<OptimalPResponse> {
    return this.request(`/api/optimal-p?dist=${encodeURIComponent(dist)}`);
  }

  distributions(): Promise<{ families: { family: string; aliases: string[]; params: string[] }[] }> {
    return this.request('/api/distributions');
  }

  /** Submit a simulation and poll the job (500 ms, backoff x1.5, cap 5 s)
   * until the results arrive.  Polling stops immediately when the token is
   * cancelled. */
  async runSimulation(req: SimulateRequest, opts: PollOptions = {}): Promise<ResultRow[]> {
    const first = await this.simulate(req);
    if (first.status === 'done' && first.results) return first.results;
    let delay = POLL_INITIAL_MS;
    for (let attempt = 1; ; attempt += 1) {
      if (opts.token?.cancelled) throw new CancelledError();
      opts.onPoll?.(attempt, delay);
      await this.sleep(delay);
      if (opts.token?.cancelled) throw new CancelledError();
      const job = await this.job(first.job_id);
      if (job.status === 'done' && job.results) return job.results;
      if (job.status === 'failed') {
        const err = job.error ?? { code: 'internal', message: 'job failed' };
        throw new ApiError(500, err.code, err.message);
      }
      delay = Math.min(delay * POLL_FACTOR, POLL_MAX_MS);
    }
  }
}
