import { describe, expect, it } from 'vitest';

import {
  DEFAULT_CAPS,
  FAMILIES,
  distToString,
  formHash,
  formToRequest,
  parseSizes,
  validateDist,
  validateForm,
  type SimulationForm,
} from '../src/validate.js';

function validForm(): SimulationForm {
  return {
    dist1: { family: 'lognormal', params: [0, 1] },
    dist2: { family: 'lognormal', params: [0, 1] },
    sizes: '50:50, 200:200',
    methods: [{ name: 'pb' }, { name: 'rq', p: 0.5 }],
    alpha: 0.05,
    trials: 2000,
    seed: 1,
  };
}

describe('family schemas', () => {
  it('covers all nine families', () => {
    expect(FAMILIES.map((f) => f.family).sort()).toEqual([
      'beta', 'chisq', 'exp', 'gamma', 'lognormal', 'normal', 'pareto2', 'uniform', 'weibull',
    ]);
  });

  it('each schema has defaults matching its parameter count', () => {
    for (const f of FAMILIES) {
      expect(f.defaults).toHaveLength(f.params.length);
      expect(validateDist({ family: f.family, params: f.defaults }, f.family)).toEqual([]);
    }
  });
});

describe('validateDist', () => {
  it('rejects non-positive scale parameters', () => {
    const errors = validateDist({ family: 'lognormal', params: [0, -1] }, 'd');
    expect(errors.join(' ')).toMatch(/sigma must be > 0/);
  });

  it('rejects uniform with a >= b', () => {
    const errors = validateDist({ family: 'uniform', params: [2, 2] }, 'd');
    expect(errors.join(' ')).toMatch(/a < b/);
  });

  it('rejects wrong arity and unknown families', () => {
    expect(validateDist({ family: 'exp', params: [] }, 'd')).not.toEqual([]);
    expect(validateDist({ family: 'nosuch', params: [1] }, 'd')).not.toEqual([]);
  });

  it('rejects NaN parameters', () => {
    expect(validateDist({ family: 'exp', params: [Number.NaN] }, 'd')).not.toEqual([]);
  });
});

describe('parseSizes', () => {
  it('parses comma separated n1:n2 pairs', () => {
    expect(parseSizes('50:50, 200:500')).toEqual([[50, 50], [200, 500]]);
  });

  it('accepts the x separator too', () => {
    expect(parseSizes('30x40')).toEqual([[30, 40]]);
  });

  it('returns an error string for malformed pairs', () => {
    expect(parseSizes('50-50')).toMatch(/not n1:n2/);
    expect(parseSizes('')).toMatch(/at least one/);
    expect(parseSizes('1:50')).toMatch(/at least 2/);
  });
});

describe('validateForm', () => {
  it('accepts the reference form', () => {
    expect(validateForm(validForm())).toEqual([]);
  });

  it('catches invalid distribution parameters (sigma <= 0)', () => {
    const form = validForm();
    form.dist1.params = [0, 0];
    expect(validateForm(form)).not.toEqual([]);
  });

  it('enforces the trials cap', () => {
    const form = validForm();
    form.trials = DEFAULT_CAPS.maxTrials + 1;
    expect(validateForm(form).join(' ')).toMatch(/capped/);
  });

  it('requires p in (0, 0.5) for the squared IQR ratio', () => {
    const form = validForm();
    form.methods = [{ name: 'riqr', p: 0.6 }];
    expect(validateForm(form).join(' ')).toMatch(/riqr/);
    form.methods = [{ name: 'riqr', p: 0.2 }];
    expect(validateForm(form)).toEqual([]);
  });

  it('requires at least one method', () => {
    const form = validForm();
    form.methods = [];
    expect(validateForm(form).join(' ')).toMatch(/method/);
  });

  it('bounds alpha, trials and seed', () => {
    const bad = validForm();
    bad.alpha = 1.2;
    bad.trials = 0;
    bad.seed = -3;
    const errors = validateForm(bad);
    expect(errors.join(' ')).toMatch(/alpha/);
    expect(errors.join(' ')).toMatch(/trials/);
    expect(errors.join(' ')).toMatch(/seed/);
  });

  it('enforces the cell cap', () => {
    const form = validForm();
    form.sizes = Array.from({ length: 200 }, (_, i) => `${i + 2}:${i + 2}`).join(',');
    expect(validateForm(form).join(' ')).toMatch(/grid capped/);
  });
});

describe('request building', () => {
  it('serializes distributions and methods with the server grammar', () => {
    const req = formToRequest(validForm());
    expect(req).toEqual({
      dist1: 'lognormal(0,1)',
      dist2: 'lognormal(0,1)',
      sizes: [[50, 50], [200, 200]],
      methods: ['pb', 'rq@0.5'],
      alpha: 0.05,
      trials: 2000,
      seed: 1,
    });
    expect(distToString({ family: 'pareto2', params: [1, 3] })).toBe('pareto2(1,3)');
  });

  it('hashes identical forms identically and distinct forms distinctly', () => {
    const a = formHash(validForm());
    const b = formHash(validForm());
    expect(a).toBe(b);
    const changed = validForm();
    changed.trials = 2001;
    expect(formHash(changed)).not.toBe(a);
  });
});
