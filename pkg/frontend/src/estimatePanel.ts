// Estimation panel: upload two one-column CSV samples and read every
// interval estimate at once. The median-ratio method is disabled (with an
// explanatory tooltip) when either sample has non-positive values.

import { ApiClient } from './api.js';
import { CsvError, parseNumericColumn } from './csv.js';
import { renderError, renderEstimates, type EstimateDisplay } from './render.js';

const METHODS: { name: string; label: string; p?: number; positiveOnly?: boolean }[] = [
  { name: 'rq', label: 'quantile ratio (p=0.5)', p: 0.5 },
  { name: 'riqr', label: 'squared IQR ratio (p=0.2)', p: 0.2 },
  { name: 'rvar', label: 'variance ratio' },
  { name: 'pb', label: 'median ratio (PB)', positiveOnly: true },
  { name: 'f', label: 'F interval' },
  { name: 'shoemaker', label: 'IQR Z test (p=0.25)', p: 0.25 },
];

export class EstimatePanel {
  private x: number[] | null = null;
  private y: number[] | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ApiClient,
  ) {}

  mount(): void {
    const checks = METHODS.map(
      (m) => `<label id="wrap-${m.name}"><input type="checkbox" id="est-${m.name}" checked> ${m.label}</label>`,
    ).join('');
    this.root.innerHTML = `
      <div class="uploads">
        <label>sample X <input type="file" id="est-x" accept=".csv,text/csv"></label>
        <label>sample Y <input type="file" id="est-y" accept=".csv,text/csv"></label>
      </div>
      <fieldset><legend>Methods</legend>${checks}</fieldset>
      <label>alpha <input type="number" step="0.01" id="est-alpha" value="0.05"></label>
      <button type="button" id="est-run" disabled>Estimate</button>
      <div id="est-status" aria-live="polite"></div>
      <div id="est-results"></div>`;
    this.el<HTMLInputElement>('est-x').addEventListener('change', (ev) => void this.load(ev, 'x'));
    this.el<HTMLInputElement>('est-y').addEventListener('change', (ev) => void this.load(ev, 'y'));
    this.el<HTMLButtonElement>('est-run').addEventListener('click', () => void this.run());
  }

  private el<T extends HTMLElement>(id: string): T {
    const found = this.root.querySelector(`#${id}`);
    if (!found) throw new Error(`missing element #${id}`);
    return found as T;
  }

  private async load(ev: Event, which: 'x' | 'y'): Promise<void> {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    const status = this.el('est-status');
    if (!file) return;
    try {
      const values = parseNumericColumn(await file.text());
      this[which] = values;
      status.textContent = `${file.name}: ${values.length} values`;
    } catch (err) {
      this[which] = null;
      const message = err instanceof CsvError ? `${file.name}: ${err.message}` : String(err);
      status.innerHTML = renderError(message);
    }
    this.refresh();
  }

  /** Enable the run button and gate positive-only methods on the data. */
  refresh(): void {
    const ready = this.x !== null && this.y !== null;
    this.el<HTMLButtonElement>('est-run').disabled = !ready;
    const positive =
      ready && this.x!.every((v) => v > 0) && this.y!.every((v) => v > 0);
    for (const m of METHODS) {
      if (!m.positiveOnly) continue;
      const box = this.el<HTMLInputElement>(`est-${m.name}`);
      const wrap = this.el<HTMLLabelElement>(`wrap-${m.name}`);
      box.disabled = ready && !positive;
      if (ready && !positive) {
        box.checked = false;
        wrap.title = 'requires strictly positive data in both samples';
        wrap.classList.add('disabled');
      } else {
        wrap.title = '';
        wrap.classList.remove('disabled');
      }
    }
  }

  private async run(): Promise<void> {
    if (!this.x || !this.y) return;
    const alpha = Number(this.el<HTMLInputElement>('est-alpha').value);
    const out: EstimateDisplay[] = [];
    const status = this.el('est-status');
    status.textContent = 'estimating…';
    for (const m of METHODS) {
      if (!this.el<HTMLInputElement>(`est-${m.name}`).checked) continue;
      try {
        const payload = await this.client.estimate({
          x: this.x, y: this.y, method: m.name, p: m.p, alpha,
        });
        out.push({ label: m.label, payload });
      } catch (err) {
        const message = err instanceof Error ? err.message : String(err);
        status.innerHTML = renderError(`${m.label}: ${message}`);
        return;
      }
    }
    status.textContent = '';
    this.el('est-results').innerHTML = renderEstimates(out);
  }
}
