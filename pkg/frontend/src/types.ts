// Mirrors the /api/v1 JSON contract. Every field here is server-authoritative;
// the UI renders these values and never derives its own statements or merges.

export interface CaseSummary {
  id: string;
  score: number;
}

export interface CaseListPayload {
  total: number;
  offset: number;
  limit: number;
  cases: CaseSummary[];
}

export type FactorKind = 'binary' | 'numeric' | 'categorical';

export interface CaseFactor {
  display_name: string;
  kind: FactorKind;
  value: number | string;
  displayed_value: string;
  category_code: string;
  category_name: string;
}

export interface CasePayload {
  id: string;
  score: number;
  raw_output: number;
  narrative: string;
  factors: CaseFactor[];
}

export type ContributionLabel = 'risk' | 'protective' | 'neutral';

export interface ContributionRow {
  display_name: string;
  displayed_value: string;
  contribution: number;
  label: ContributionLabel;
  category_code: string;
  category_name: string;
}

export interface ContributionsPayload {
  case_id: string;
  score: number;
  base_value: number;
  raw_output: number;
  view: 'top' | 'all' | 'split';
  rows?: ContributionRow[];
  risk?: ContributionRow[];
  protective?: ContributionRow[];
}

export interface WhatIfChange {
  factor: string;
  value: number | string;
}

export interface WhatIfPayload {
  case_id: string;
  old_score: number;
  new_score: number;
  old_raw: number;
  new_raw: number;
  direction: 'up' | 'down' | 'unchanged';
  changes: WhatIfChange[];
}

export interface FlipRow {
  display_name: string;
  statement: string;
  new_score: number;
  direction: 'up' | 'down' | 'unchanged';
}

export interface FlipsPayload {
  case_id: string;
  old_score: number;
  rows: FlipRow[];
}

export interface ModelFactor {
  display_name: string;
  kind: FactorKind;
  category_code: string;
  category_name: string;
  member_labels?: string[];
  min_value?: number | null;
  max_value?: number | null;
}

export interface ModelPayload {
  outcome_name: string;
  reference_size: number;
  score_min: number;
  score_max: number;
  review_mode: boolean;
  factors: ModelFactor[];
}

export interface ImportanceEntry {
  factor: string;
  description: string;
  raw_importance: number;
  relative_importance: number;
}

export interface ImportancePayload {
  metric_name: string;
  repeats: number;
  seed: number;
  entries: ImportanceEntry[];
}

export interface BoxStats {
  global_min: number;
  global_max: number;
  slice_min: number;
  q1: number;
  median: number;
  q3: number;
  slice_max: number;
}

export interface Segment {
  label: string;
  pct: number;
}

export interface DistributionWidget {
  display_name: string;
  kind: FactorKind;
  category_code: string;
  category_name: string;
  pct_true?: number;
  box?: BoxStats;
  segments?: Segment[];
}

export interface DistributionsPayload {
  score: number;
  case_count: number;
  removal_rate_pct: number | null;
  factors: DistributionWidget[];
}

export interface NeighborEntry {
  id: string;
  distance: number;
  score: number;
}

export interface TimelineEvent {
  date: string;
  kind: string;
  note: string;
}

export interface TimelineRowPayload {
  case_id: string;
  is_current: boolean;
  score: number;
  events: TimelineEvent[];
}

export interface SimilarPayload {
  case_id: string;
  score: number;
  k: number;
  truncated: boolean;
  neighbors: NeighborEntry[];
  axis_start: string | null;
  axis_end: string | null;
  empty: boolean;
  rows: TimelineRowPayload[];
}
