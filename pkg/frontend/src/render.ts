// Pure HTML renderers. Every number is printed verbatim with String(); the
// client adds no rounding and no arithmetic of its own.

import type { IntervalPayload, ResultRow, TestPayload } from './types.js';

function esc(text: string): string {
  return text
    .replaceAll('&', '&amp;')
    .replaceAll('<', '&lt;')
    .replaceAll('>', '&gt;')
    .replaceAll('"', '&quot;');
}

export function verbatim(value: number | string | null | undefined): string {
  if (value === null || value === undefined) return '–';
  return esc(String(value));
}

export function methodLabel(row: Pick<ResultRow, 'method' | 'p'>): string {
  return row.p === null || row.p === undefined ? row.method : `${row.method}@${row.p}`;
}

/** Table shaped like the reference studies: one row per method, one column
 * per sample-size pair, cell text "coverage (mean width)". Cells whose
 * coverage falls below the nominal level 1 - alpha get class "below-nominal". */
export function renderResultsTable(rows: ResultRow[], alpha: number): string {
  const sizePairs: string[] = [];
  const methods: string[] = [];
  const byCell = new Map<string, ResultRow>();
  for (const row of rows) {
    const size = `${row.n1},${row.n2}`;
    const method = methodLabel(row);
    if (!sizePairs.includes(size)) sizePairs.push(size);
    if (!methods.includes(method)) methods.push(method);
    byCell.set(`${method}|${size}`, row);
  }
  const nominal = 1 - alpha;
  const head = sizePairs.map((s) => `<th scope="col">n = ${esc(s)}</th>`).join('');
  const body = methods
    .map((method) => {
      const cells = sizePairs
        .map((size) => {
          const row = byCell.get(`${method}|${size}`);
          if (!row) return '<td class="empty">–</td>';
          const below = row.coverage !== null && row.coverage < nominal;
          const classes = below ? ' class="below-nominal"' : '';
          const width = row.mean_width ?? row.median_width;
          const fails = row.failures > 0 ? ` <span class="failures">${verbatim(row.failures)} failed</span>` : '';
          const title = `median width ${String(row.median_width ?? '–')}, failures ${String(row.failures)}`;
          return `<td${classes} title="${esc(title)}">${verbatim(row.coverage)} (${verbatim(width)})${fails}</td>`;
        })
        .join('');
      return `<tr><th scope="row">${esc(method)}</th>${cells}</tr>`;
    })
    .join('');
  return (
    `<table class="results"><thead><tr><th>method</th>${head}</tr></thead>` +
    `<tbody>${body}</tbody></table>`
  );
}

export interface EstimateDisplay {
  label: string;
  payload: IntervalPayload | TestPayload;
}

export function renderEstimates(items: EstimateDisplay[]): string {
  const rows = items
    .map(({ label, payload }) => {
      if ('point' in payload) {
        return (
          `<tr><th scope="row">${esc(label)}</th>` +
          `<td>${verbatim(payload.point)}</td>` +
          `<td>[${verbatim(payload.lower)}, ${verbatim(payload.upper)}]</td></tr>`
        );
      }
      return (
        `<tr><th scope="row">${esc(label)}</th>` +
        `<td>Z = ${verbatim(payload.statistic)}</td>` +
        `<td>p-value ${verbatim(payload.p_value)}</td></tr>`
      );
    })
    .join('');
  return (
    '<table class="estimates"><thead><tr><th>method</th><th>point</th><th>interval</th></tr></thead>' +
    `<tbody>${rows}</tbody></table>`
  );
}

export interface RunRecord {
  label: string;
  html: string;
}

/** Previous runs, newest first, so parameter changes can be compared. */
export function renderComparisonStrip(history: RunRecord[]): string {
  if (history.length === 0) return '';
  return history
    .map(
      (run, i) =>
        `<details class="run"${i === 0 ? ' open' : ''}><summary>${esc(run.label)}</summary>${run.html}</details>`,
    )
    .join('');
}

export function renderError(message: string, retryId?: string): string {
  const retry = retryId ? ` <button type="button" id="${esc(retryId)}">retry</button>` : '';
  return `<div class="error" role="alert">${esc(message)}${retry}</div>`;
}
