// Client-side form model and validation mirroring the server's rules, so an
// invalid form never issues a request.

import type { SimulateRequest } from './types.js';

export interface ParamSchema {
  name: string;
  label: string;
  positive?: boolean;
}

export interface FamilySchema {
  family: string;
  label: string;
  params: ParamSchema[];
  defaults: number[];
  /** extra cross-parameter rule; returns an error string or null */
  check?: (params: number[]) => string | null;
}

export const FAMILIES: FamilySchema[] = [
  {
    family: 'lognormal', label: 'Log-normal',
    params: [{ name: 'mu', label: 'mu' }, { name: 'sigma', label: 'sigma', positive: true }],
    defaults: [0, 1],
  },
  {
    family: 'exp', label: 'Exponential',
    params: [{ name: 'rate', label: 'rate', positive: true }],
    defaults: [1],
  },
  {
    family: 'chisq', label: 'Chi-squared',
    params: [{ name: 'df', label: 'df', positive: true }],
    defaults: [2],
  },
  {
    family: 'pareto2', label: 'Pareto II',
    params: [{ name: 'scale', label: 'scale', positive: true }, { name: 'shape', label: 'shape', positive: true }],
    defaults: [1, 3],
  },
  {
    family: 'normal', label: 'Normal',
    params: [{ name: 'mu', label: 'mu' }, { name: 'sigma', label: 'sigma', positive: true }],
    defaults: [0, 1],
  },
  {
    family: 'uniform', label: 'Uniform',
    params: [{ name: 'a', label: 'a' }, { name: 'b', label: 'b' }],
    defaults: [0, 1],
    check: (p) => ((p[0] ?? 0) < (p[1] ?? 0) ? null : 'uniform requires a < b'),
  },
  {
    family: 'beta', label: 'Beta',
    params: [{ name: 'alpha', label: 'alpha', positive: true }, { name: 'beta', label: 'beta', positive: true }],
    defaults: [2, 2],
  },
  {
    family: 'gamma', label: 'Gamma',
    params: [{ name: 'shape', label: 'shape', positive: true }],
    defaults: [2],
  },
  {
    family: 'weibull', label: 'Weibull',
    params: [{ name: 'shape', label: 'shape', positive: true }],
    defaults: [2],
  },
];

export function familySchema(family: string): FamilySchema | undefined {
  return FAMILIES.find((f) => f.family === family);
}

export interface DistInput {
  family: string;
  params: number[];
}

export interface MethodChoice {
  name: 'pb' | 'rq' | 'riqr' | 'rvar' | 'f';
  p?: number;
}

export interface SimulationForm {
  dist1: DistInput;
  dist2: DistInput;
  /** size pairs as text, e.g. "50:50, 200:200" */
  sizes: string;
  methods: MethodChoice[];
  alpha: number;
  trials: number;
  seed: number;
}

export interface ServerCaps {
  maxTrials: number;
  maxCells: number;
}

export const DEFAULT_CAPS: ServerCaps = { maxTrials: 100_000, maxCells: 256 };

const NEEDS_P: Record<MethodChoice['name'], boolean> = {
  pb: false, rq: true, riqr: true, rvar: false, f: false,
};

export function validateDist(dist: DistInput, label: string): string[] {
  const schema = familySchema(dist.family);
  if (!schema) return [`${label}: unknown family '${dist.family}'`];
  const errors: string[] = [];
  if (dist.params.length !== schema.params.length) {
    errors.push(`${label}: ${schema.family} takes ${schema.params.length} parameter(s)`);
    return errors;
  }
  schema.params.forEach((p, i) => {
    const v = dist.params[i];
    if (v === undefined || Number.isNaN(v) || !Number.isFinite(v)) {
      errors.push(`${label}: ${p.name} must be a number`);
    } else if (p.positive && v <= 0) {
      errors.push(`${label}: ${p.name} must be > 0`);
    }
  });
  if (errors.length === 0 && schema.check) {
    const msg = schema.check(dist.params);
    if (msg) errors.push(`${label}: ${msg}`);
  }
  return errors;
}

export function parseSizes(text: string): [number, number][] | string {
  const pairs: [number, number][] = [];
  for (const part of text.split(',')) {
    const token = part.trim();
    if (!token) continue;
    const m = /^(\d+)\s*[:x]\s*(\d+)$/.exec(token);
    if (!m) return `size pair '${token}' is not n1:n2`;
    const n1 = Number(m[1]);
    const n2 = Number(m[2]);
    if (n1 < 2 || n2 < 2) return `size pair '${token}': both sizes must be at least 2`;
    pairs.push([n1, n2]);
  }
  if (pairs.length === 0) return 'at least one n1:n2 size pair is required';
  return pairs;
}

export function validateForm(form: SimulationForm, caps: ServerCaps = DEFAULT_CAPS): string[] {
  const errors: string[] = [];
  errors.push(...validateDist(form.dist1, 'first distribution'));
  errors.push(...validateDist(form.dist2, 'second distribution'));
  const sizes = parseSizes(form.sizes);
  if (typeof sizes === 'string') errors.push(sizes);
  if (form.methods.length === 0) errors.push('select at least one method');
  for (const m of form.methods) {
    if (NEEDS_P[m.name]) {
      const upper = m.name === 'riqr' ? 0.5 : 1.0;
      if (m.p === undefined || Number.isNaN(m.p) || m.p <= 0 || m.p >= upper) {
        errors.push(`method ${m.name} needs a level p in (0, ${upper})`);
      }
    }
  }
  if (!(form.alpha > 0 && form.alpha < 1)) errors.push('alpha must be in (0, 1)');
  if (!Number.isInteger(form.trials) || form.trials < 1) {
    errors.push('trials must be a positive integer');
  } else if (form.trials > caps.maxTrials) {
    errors.push(`trials capped at ${caps.maxTrials}`);
  }
  if (!Number.isInteger(form.seed) || form.seed < 0) errors.push('seed must be a non-negative integer');
  if (typeof sizes !== 'string') {
    const cells = sizes.length * form.methods.length;
    if (cells > caps.maxCells) errors.push(`grid capped at ${caps.maxCells} cells (got ${cells})`);
  }
  return errors;
}

export function distToString(dist: DistInput): string {
  return `${dist.family}(${dist.params.join(',')})`;
}

export function methodToString(m: MethodChoice): string {
  return NEEDS_P[m.name] ? `${m.name}@${m.p}` : m.name;
}

/** Build the request body; only call on a form that passed validateForm. */
export function formToRequest(form: SimulationForm): SimulateRequest {
  const sizes = parseSizes(form.sizes);
  if (typeof sizes === 'string') throw new Error(sizes);
  return {
    dist1: distToString(form.dist1),
    dist2: distToString(form.dist2),
    sizes,
    methods: form.methods.map(methodToString),
    alpha: form.alpha,
    trials: form.trials,
    seed: form.seed,
  };
}

/** Stable key for the result cache: same form, same key. */
export function formHash(form: SimulationForm): string {
  const req = formToRequest(form);
  return JSON.stringify([req.dist1, req.dist2, req.sizes, req.methods, req.alpha, req.trials, req.seed]);
}
