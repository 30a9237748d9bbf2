// The submit gate shared by the UI and its contract tests: an invalid form
// returns its errors without a single request leaving the client.

import type { ApiClient, CancelToken } from './api.js';
import type { ResultRow } from './types.js';
import {
  DEFAULT_CAPS,
  formToRequest,
  validateForm,
  type ServerCaps,
  type SimulationForm,
} from './validate.js';

export interface RunOptions {
  caps?: ServerCaps;
  token?: CancelToken;
  onPoll?: (attempt: number, delayMs: number) => void;
}

export type RunOutcome = { errors: string[] } | { rows: ResultRow[] };

export async function runValidatedSimulation(
  form: SimulationForm,
  client: Pick<ApiClient, 'runSimulation'>,
  opts: RunOptions = {},
): Promise<RunOutcome> {
  const errors = validateForm(form, opts.caps ?? DEFAULT_CAPS);
  if (errors.length > 0) return { errors };
  const rows = await client.runSimulation(formToRequest(form), {
    token: opts.token,
    onPoll: opts.onPoll,
  });
  return { rows };
}
