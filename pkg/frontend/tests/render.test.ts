import { describe, expect, it } from 'vitest';

import { methodLabel, renderComparisonStrip, renderEstimates, renderError, renderResultsTable, verbatim } from '../src/render.js';
import type { ResultRow } from '../src/types.js';

function row(overrides: Partial<ResultRow>): ResultRow {
  return {
    dist1: 'exp(1)', dist2: 'exp(1)', n1: 50, n2: 50, method: 'rq', p: 0.5,
    alpha: 0.05, trials: 100, coverage: 0.96, mean_width: 1.25,
    median_width: 1.2, failures: 0,
    ...overrides,
  };
}

describe('verbatim', () => {
  it('prints numbers exactly as JavaScript stringifies the JSON value', () => {
    expect(verbatim(0.9505)).toBe('0.9505');
    expect(verbatim(1.187171618277677)).toBe('1.187171618277677');
    expect(verbatim(null)).toBe('–');
  });

  it('escapes HTML metacharacters', () => {
    expect(verbatim('<b>&')).toBe('&lt;b&gt;&amp;');
  });
});

describe('renderResultsTable', () => {
  it('lays methods out as rows and size pairs as columns', () => {
    const html = renderResultsTable(
      [
        row({ n1: 50, n2: 50, method: 'pb', p: null, coverage: 0.95 }),
        row({ n1: 200, n2: 200, method: 'pb', p: null, coverage: 0.94 }),
        row({ n1: 50, n2: 50, method: 'rq', p: 0.5, coverage: 0.97 }),
        row({ n1: 200, n2: 200, method: 'rq', p: 0.5, coverage: 0.96 }),
      ],
      0.05,
    );
    expect(html).toContain('n = 50,50');
    expect(html).toContain('n = 200,200');
    expect(html).toContain('<th scope="row">pb</th>');
    expect(html).toContain('<th scope="row">rq@0.5</th>');
  });

  it('flags coverage below the nominal level', () => {
    const html = renderResultsTable(
      [row({ coverage: 0.91 }), row({ n1: 200, n2: 200, coverage: 0.97 })],
      0.05,
    );
    const flagged = html.match(/below-nominal/g) ?? [];
    expect(flagged).toHaveLength(1);
  });

  it('shows failure counts and survives null coverage', () => {
    const html = renderResultsTable([row({ coverage: null, failures: 7, mean_width: null })], 0.05);
    expect(html).toContain('7 failed');
    expect(html).toContain('–');
  });

  it('keeps every numeric value verbatim', () => {
    const r = row({ coverage: 0.9615, mean_width: 0.8397123456789, median_width: 0.81 });
    const html = renderResultsTable([r], 0.05);
    expect(html).toContain(String(r.coverage));
    expect(html).toContain(String(r.mean_width));
    expect(html).toContain(String(r.median_width));
  });
});

describe('renderEstimates', () => {
  it('renders intervals and test results', () => {
    const html = renderEstimates([
      {
        label: 'quantile ratio',
        payload: { method: 'ratio_quantiles', p: 0.5, alpha: 0.05, point: 1.1293868602635468, lower: 0.7, upper: 1.8 },
      },
      { label: 'Z test', payload: { statistic: -0.205356, p_value: 0.837294, p: 0.25 } },
    ]);
    expect(html).toContain('1.1293868602635468');
    expect(html).toContain('[0.7, 1.8]');
    expect(html).toContain('Z = -0.205356');
    expect(html).toContain('p-value 0.837294');
  });
});

describe('comparison strip and errors', () => {
  it('keeps previous runs, newest open', () => {
    const html = renderComparisonStrip([
      { label: 'run B', html: '<p>b</p>' },
      { label: 'run A', html: '<p>a</p>' },
    ]);
    expect(html.indexOf('run B')).toBeLessThan(html.indexOf('run A'));
    expect(html).toContain('<details class="run" open>');
  });

  it('renders an inline error with a retry hook', () => {
    const html = renderError('boom', 'retry-id');
    expect(html).toContain('role="alert"');
    expect(html).toContain('boom');
    expect(html).toContain('id="retry-id"');
  });
});

describe('methodLabel', () => {
  it('appends the level only when present', () => {
    expect(methodLabel({ method: 'pb', p: null })).toBe('pb');
    expect(methodLabel({ method: 'riqr', p: 0.2 })).toBe('riqr@0.2');
  });
});
