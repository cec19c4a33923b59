import type {
  CaseListPayload,
  CasePayload,
  ContributionRow,
  ContributionsPayload,
  DistributionsPayload,
  FlipsPayload,
  ImportancePayload,
  ModelPayload,
  SimilarPayload,
  WhatIfPayload,
} from '../src/types.js';

// Hand-built payloads in the exact shape the HTTP API serves. Contract
// tests render views from these instead of standing up a server.

export function modelPayload(reviewMode = true): ModelPayload {
  return {
    outcome_name: 'removal within two years',
    reference_size: 96,
    score_min: 1,
    score_max: 20,
    review_mode: reviewMode,
    factors: [
      {
        display_name: 'PARENT WAS A VICTIM OF ABUSE',
        kind: 'binary',
        category_code: 'H',
        category_name: 'HISTORY',
      },
      {
        display_name: 'NUMBER OF PRIOR REFERRALS',
        kind: 'numeric',
        category_code: 'R',
        category_name: 'REFERRAL',
        min_value: 0,
        max_value: 12,
      },
      {
        display_name: 'HOUSING STATUS',
        kind: 'categorical',
        category_code: 'E',
        category_name: 'ENVIRONMENT',
        member_labels: ['STABLE', 'TEMPORARY', 'SHELTER'],
      },
    ],
  };
}

export function casePayload(id = 'C-0001'): CasePayload {
  return {
    id,
    score: 14,
    raw_output: 1.62,
    narrative: 'Third referral this year.',
    factors: [
      {
        display_name: 'PARENT WAS A VICTIM OF ABUSE',
        kind: 'binary',
        value: 1,
        displayed_value: 'yes',
        category_code: 'H',
        category_name: 'HISTORY',
      },
      {
        display_name: 'NUMBER OF PRIOR REFERRALS',
        kind: 'numeric',
        value: 3,
        displayed_value: '3',
        category_code: 'R',
        category_name: 'REFERRAL',
      },
      {
        display_name: 'HOUSING STATUS',
        kind: 'categorical',
        value: 'TEMPORARY',
        displayed_value: 'TEMPORARY',
        category_code: 'E',
        category_name: 'ENVIRONMENT',
      },
    ],
  };
}

export function contributionRow(
  overrides: Partial<ContributionRow> = {},
): ContributionRow {
  return {
    display_name: 'PARENT WAS A VICTIM OF ABUSE',
    displayed_value: 'yes',
    contribution: 0.4,
    label: 'risk',
    category_code: 'H',
    category_name: 'HISTORY',
    ...overrides,
  };
}

/** Ten rows alternating risk and protective, magnitudes descending. */
export function tenRows(): ContributionRow[] {
  const rows: ContributionRow[] = [];
  for (let i = 0; i < 10; i++) {
    const risk = i % 2 === 0;
    const magnitude = 1.0 - i * 0.08;
    rows.push(
      contributionRow({
        display_name: `FACTOR ${i}`,
        contribution: risk ? magnitude : -magnitude,
        label: risk ? 'risk' : 'protective',
      }),
    );
  }
  return rows;
}

export function contributionsPayload(
  rows: ContributionRow[] = tenRows(),
  view = 'top',
): ContributionsPayload {
  return {
    case_id: 'C-0001',
    score: 14,
    base_value: 0.31,
    raw_output: 1.62,
    view,
    rows,
  };
}

export function splitPayload(): ContributionsPayload {
  const rows = tenRows();
  return {
    case_id: 'C-0001',
    score: 14,
    base_value: 0.31,
    raw_output: 1.62,
    view: 'split',
    risk: rows.filter((r) => r.label === 'risk'),
    protective: rows.filter((r) => r.label === 'protective'),
  };
}

export function whatifPayload(): WhatIfPayload {
  return {
    case_id: 'C-0001',
    old_score: 14,
    new_score: 11,
    old_raw: 1.62,
    new_raw: 1.17,
    direction: 'down',
    changes: [{ factor: 'PARENT WAS A VICTIM OF ABUSE', value: 0 }],
  };
}

export function flipsPayload(): FlipsPayload {
  return {
    case_id: 'C-0001',
    old_score: 14,
    rows: [
      {
        display_name: 'PARENT WAS A VICTIM OF ABUSE',
        statement: 'IF PARENT WAS NOT A VICTIM OF ABUSE, SCORE WOULD BE 11',
        new_score: 11,
        direction: 'down',
      },
      {
        display_name: 'FAMILY IS RECEIVING PUBLIC BENEFITS',
        statement: 'IF FAMILY WAS RECEIVING PUBLIC BENEFITS, SCORE WOULD BE 14',
        new_score: 14,
        direction: 'unchanged',
      },
    ],
  };
}

export function importancePayload(): ImportancePayload {
  return {
    metric_name: 'mse',
    repeats: 10,
    seed: 42,
    entries: [
      {
        factor: 'NUMBER OF PRIOR REFERRALS',
        description: 'NUMBER OF PRIOR REFERRALS',
        raw_importance: 0.91,
        relative_importance: 1.0,
      },
      {
        factor: 'PARENT WAS A VICTIM OF ABUSE',
        description: 'PARENT WAS A VICTIM OF ABUSE',
        raw_importance: 0.455,
        relative_importance: 0.5,
      },
    ],
  };
}

export function distributionsPayload(): DistributionsPayload {
  return {
    score: 14,
    case_count: 40,
    removal_rate_pct: 32.5,
    factors: [
      {
        display_name: 'PARENT WAS A VICTIM OF ABUSE',
        kind: 'binary',
        category_code: 'H',
        category_name: 'HISTORY',
        pct_true: 62.5,
      },
      {
        display_name: 'NUMBER OF PRIOR REFERRALS',
        kind: 'numeric',
        category_code: 'R',
        category_name: 'REFERRAL',
        box: {
          global_min: 0,
          global_max: 12,
          slice_min: 1,
          q1: 2,
          median: 3,
          q3: 5,
          slice_max: 9,
        },
      },
      {
        display_name: 'HOUSING STATUS',
        kind: 'categorical',
        category_code: 'E',
        category_name: 'ENVIRONMENT',
        segments: [
          { label: 'STABLE', pct: 25.0 },
          { label: 'TEMPORARY', pct: 50.0 },
          { label: 'SHELTER', pct: 25.0 },
        ],
      },
    ],
  };
}

export function emptyDistributionsPayload(): DistributionsPayload {
  return {
    score: 1,
    case_count: 0,
    removal_rate_pct: null,
    factors: [],
  };
}

export function similarPayload(): SimilarPayload {
  return {
    case_id: 'C-0001',
    score: 14,
    k: 3,
    truncated: false,
    neighbors: [
      { id: 'C-0009', distance: 0.412, score: 13 },
      { id: 'C-0031', distance: 0.587, score: 14 },
      { id: 'C-0017', distance: 0.744, score: 15 },
    ],
    axis_start: '2023-01-10',
    axis_end: '2025-06-01',
    empty: false,
    rows: [
      {
        case_id: 'C-0001',
        is_current: true,
        score: 14,
        events: [
          { date: '2023-02-14', kind: 'referral', note: '' },
          { date: '2024-07-01', kind: 'investigation', note: 'screened in' },
        ],
      },
      {
        case_id: 'C-0009',
        is_current: false,
        score: 13,
        events: [
          { date: '2023-01-10', kind: 'referral', note: '' },
          { date: '2024-03-20', kind: 'services', note: '' },
          { date: '2025-06-01', kind: 'removal', note: '' },
        ],
      },
    ],
  };
}

export function caseListPayload(): CaseListPayload {
  return {
    total: 2,
    offset: 0,
    limit: 100,
    cases: [
      { id: 'C-0001', score: 14 },
      { id: 'C-0002', score: 7 },
    ],
  };
}
