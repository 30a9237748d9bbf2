// Wire types for the qratio JSON API. The client never computes statistics;
// these shapes are rendered verbatim.

export interface IntervalPayload {
  method: string;
  p: number | null;
  alpha: number;
  point: number;
  lower: number;
  upper: number;
}

export interface TestPayload {
  statistic: number;
  p_value: number;
  p: number;
}

export interface ResultRow {
  dist1: string;
  dist2: string;
  n1: number;
  n2: number;
  method: string;
  p: number | null;
  alpha: number;
  trials: number;
  coverage: number | null;
  mean_width: number | null;
  median_width: number | null;
  failures: number;
}

export interface ApiErrorBody {
  code: string;
  message: string;
}

export interface SimulateResponse {
  job_id: string;
  status: 'done' | 'running';
  results?: ResultRow[];
}

export interface JobResponse {
  job_id: string;
  status: 'running' | 'done' | 'failed';
  results?: ResultRow[];
  error?: ApiErrorBody;
}

export interface OptimalPResponse {
  dist: string;
  p: number;
  boundary: boolean;
}

export interface SimulateRequest {
  dist1: string;
  dist2: string;
  sizes: [number, number][];
  methods: string[];
  alpha: number;
  trials: number;
  seed: number;
}
