// Simulation panel: form -> validate -> POST /api/simulate -> poll -> table,
// with a per-form result cache and a comparison strip of previous runs.

import { ApiClient, CancelledError, type CancelToken } from './api.js';
import { runValidatedSimulation } from './controller.js';
import { renderComparisonStrip, renderError, renderResultsTable, type RunRecord } from './render.js';
import type { ResultRow } from './types.js';
import {
  DEFAULT_CAPS,
  FAMILIES,
  familySchema,
  formHash,
  formToRequest,
  methodToString,
  validateForm,
  type DistInput,
  type MethodChoice,
  type SimulationForm,
} from './validate.js';

const METHODS: { name: MethodChoice['name']; label: string; defaultP?: number }[] = [
  { name: 'pb', label: 'median ratio (PB)' },
  { name: 'rq', label: 'quantile ratio', defaultP: 0.5 },
  { name: 'riqr', label: 'squared IQR ratio', defaultP: 0.2 },
  { name: 'rvar', label: 'variance ratio' },
  { name: 'f', label: 'F interval' },
];

function distFieldset(prefix: string, legend: string): string {
  const options = FAMILIES.map((f) => `<option value="${f.family}">${f.label}</option>`).join('');
  return (
    `<fieldset><legend>${legend}</legend>` +
    `<select id="${prefix}-family">${options}</select>` +
    `<span id="${prefix}-params"></span></fieldset>`
  );
}

function methodRows(): string {
  return METHODS.map((m) => {
    const p =
      m.defaultP === undefined
        ? ''
        : ` p <input type="number" step="0.01" id="method-${m.name}-p" value="${m.defaultP}">`;
    const checked = m.name === 'pb' || m.name === 'rq' ? ' checked' : '';
    return (
      `<label><input type="checkbox" id="method-${m.name}"${checked}> ${m.label}${p}</label>`
    );
  }).join('');
}

export class SimulationPanel {
  private readonly cache = new Map<string, ResultRow[]>();
  private readonly history: RunRecord[] = [];
  private inflight: CancelToken | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ApiClient,
  ) {}

  mount(): void {
    this.root.innerHTML = `
      <form id="sim-form">
        ${distFieldset('dist1', 'First population')}
        ${distFieldset('dist2', 'Second population')}
        <label>sizes (n1:n2, comma separated)
          <input type="text" id="sim-sizes" value="50:50, 200:200"></label>
        <fieldset><legend>Methods</legend>${methodRows()}</fieldset>
        <label>alpha <input type="number" step="0.01" id="sim-alpha" value="0.05"></label>
        <label>trials <input type="number" id="sim-trials" value="2000"></label>
        <label>seed <input type="number" id="sim-seed" value="1"></label>
        <button type="submit" id="sim-run">Run simulation</button>
        <button type="button" id="sim-cancel" hidden>Cancel</button>
        <ul id="sim-errors" class="errors"></ul>
      </form>
      <div id="sim-status" aria-live="polite"></div>
      <div id="sim-history"></div>`;
    for (const prefix of ['dist1', 'dist2'] as const) {
      const select = this.el<HTMLSelectElement>(`${prefix}-family`);
      select.addEventListener('change', () => this.renderParams(prefix));
      this.renderParams(prefix);
    }
    this.el<HTMLFormElement>('sim-form').addEventListener('submit', (ev) => {
      ev.preventDefault();
      void this.run();
    });
    this.el<HTMLFormElement>('sim-form').addEventListener('input', () => this.refreshValidity());
    this.el<HTMLButtonElement>('sim-cancel').addEventListener('click', () => {
      if (this.inflight) this.inflight.cancelled = true;
    });
    this.refreshValidity();
  }

  private el<T extends HTMLElement>(id: string): T {
    const found = this.root.querySelector(`#${id}`);
    if (!found) throw new Error(`missing element #${id}`);
    return found as T;
  }

  private renderParams(prefix: 'dist1' | 'dist2'): void {
    const family = this.el<HTMLSelectElement>(`${prefix}-family`).value;
    const schema = familySchema(family);
    if (!schema) return;
    this.el(`${prefix}-params`).innerHTML = schema.params
      .map(
        (p, i) =>
          `<label>${p.label} <input type="number" step="0.1" id="${prefix}-p${i}" value="${schema.defaults[i]}"></label>`,
      )
      .join('');
    this.refreshValidity();
  }

  private readDist(prefix: 'dist1' | 'dist2'): DistInput {
    const family = this.el<HTMLSelectElement>(`${prefix}-family`).value;
    const schema = familySchema(family);
    const params = (schema?.params ?? []).map((_, i) =>
      Number(this.el<HTMLInputElement>(`${prefix}-p${i}`).value),
    );
    return { family, params };
  }

  readForm(): SimulationForm {
    const methods: MethodChoice[] = [];
    for (const m of METHODS) {
      if (!this.el<HTMLInputElement>(`method-${m.name}`).checked) continue;
      if (m.defaultP === undefined) {
        methods.push({ name: m.name });
      } else {
        methods.push({ name: m.name, p: Number(this.el<HTMLInputElement>(`method-${m.name}-p`).value) });
      }
    }
    return {
      dist1: this.readDist('dist1'),
      dist2: this.readDist('dist2'),
      sizes: this.el<HTMLInputElement>('sim-sizes').value,
      methods,
      alpha: Number(this.el<HTMLInputElement>('sim-alpha').value),
      trials: Number(this.el<HTMLInputElement>('sim-trials').value),
      seed: Number(this.el<HTMLInputElement>('sim-seed').value),
    };
  }

  /** Re-validate and enable/disable submit; invalid forms cannot send. */
  refreshValidity(): string[] {
    const errors = validateForm(this.readForm(), DEFAULT_CAPS);
    this.el<HTMLUListElement>('sim-errors').innerHTML = errors
      .map((e) => `<li>${e}</li>`)
      .join('');
    this.el<HTMLButtonElement>('sim-run').disabled = errors.length > 0 || this.inflight !== null;
    return errors;
  }

  private async run(): Promise<void> {
    const form = this.readForm();
    if (this.inflight) return;
    if (validateForm(form, DEFAULT_CAPS).length > 0) {
      this.refreshValidity();
      return;
    }
    const key = formHash(form);
    const status = this.el('sim-status');
    const cached = this.cache.get(key);
    if (cached) {
      status.innerHTML = '<p class="note">cached result (form unchanged)</p>';
      this.pushRun(form, cached);
      return;
    }
    const token: CancelToken = { cancelled: false };
    this.inflight = token;
    this.el<HTMLButtonElement>('sim-cancel').hidden = false;
    this.refreshValidity();
    status.textContent = 'running…';
    try {
      const outcome = await runValidatedSimulation(form, this.client, {
        token,
        onPoll: (attempt) => {
          status.textContent = `running… (poll ${attempt})`;
        },
      });
      if ('errors' in outcome) {
        this.refreshValidity();
        return;
      }
      const rows = outcome.rows;
      this.cache.set(key, rows);
      status.textContent = '';
      this.pushRun(form, rows);
    } catch (err) {
      if (err instanceof CancelledError) {
        status.textContent = 'cancelled';
      } else {
        const message = err instanceof Error ? err.message : String(err);
        status.innerHTML = renderError(message, 'sim-retry');
        this.root.querySelector('#sim-retry')?.addEventListener('click', () => void this.run());
      }
    } finally {
      this.inflight = null;
      this.el<HTMLButtonElement>('sim-cancel').hidden = true;
      this.refreshValidity();
    }
  }

  private pushRun(form: SimulationForm, rows: ResultRow[]): void {
    const label =
      `${formToRequest(form).dist1} vs ${formToRequest(form).dist2}, ` +
      `${form.methods.map(methodToString).join(' ')}, trials ${form.trials}, seed ${form.seed}`;
    this.history.unshift({ label, html: renderResultsTable(rows, form.alpha) });
    this.el('sim-history').innerHTML = renderComparisonStrip(this.history);
  }
}
