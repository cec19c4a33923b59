import { el, signed } from '../format.js';
import type {
  CasePayload,
  FlipsPayload,
  ModelFactor,
  ModelPayload,
  WhatIfPayload,
} from '../types.js';

// Sandbox: draft up to four factor edits, apply them, and read the rescored
// result. The flip table below lists the score each standalone Boolean
// factor would produce if reversed on its own; its statements come from the
// server verbatim.

export const MAX_DRAFTS = 4;

export interface DraftChange {
  factor: string;
  value: number | string;
}

export interface SandboxHandlers {
  onAdd(): void;
  onRemove(index: number): void;
  onFactor(index: number, factor: string): void;
  onValue(index: number, value: number | string): void;
  onApply(): void;
}

function factorByName(model: ModelPayload, name: string): ModelFactor | null {
  return model.factors.find((f) => f.display_name === name) ?? null;
}

function valueControl(
  factor: ModelFactor | null,
  draft: DraftChange,
  index: number,
  handlers: SandboxHandlers,
): HTMLElement {
  if (factor && factor.kind === 'categorical') {
    const select = el('select', 'draft-value');
    for (const label of factor.member_labels ?? []) {
      const option = el('option', '', label);
      option.value = label;
      select.appendChild(option);
    }
    select.value = String(draft.value);
    select.addEventListener('change', () => handlers.onValue(index, select.value));
    return select;
  }
  if (factor && factor.kind === 'binary') {
    const select = el('select', 'draft-value');
    for (const [text, value] of [
      ['no', '0'],
      ['yes', '1'],
    ] as const) {
      const option = el('option', '', text);
      option.value = value;
      select.appendChild(option);
    }
    select.value = String(draft.value);
    select.addEventListener('change', () =>
      handlers.onValue(index, Number(select.value)),
    );
    return select;
  }
  const input = el('input', 'draft-value');
  input.type = 'number';
  if (factor?.min_value != null) input.min = String(factor.min_value);
  if (factor?.max_value != null) input.max = String(factor.max_value);
  input.value = String(draft.value);
  input.addEventListener('change', () =>
    handlers.onValue(index, Number(input.value)),
  );
  return input;
}

function draftRow(
  model: ModelPayload,
  draft: DraftChange,
  index: number,
  error: string | undefined,
  handlers: SandboxHandlers,
): HTMLElement {
  const row = el('div', 'draft-row');

  const picker = el('select', 'draft-factor');
  for (const factor of model.factors) {
    const option = el('option', '', factor.display_name);
    option.value = factor.display_name;
    picker.appendChild(option);
  }
  picker.value = draft.factor;
  picker.addEventListener('change', () => handlers.onFactor(index, picker.value));
  row.appendChild(picker);

  row.appendChild(
    valueControl(factorByName(model, draft.factor), draft, index, handlers),
  );

  const remove = el('button', 'remove-draft', 'remove');
  remove.addEventListener('click', () => handlers.onRemove(index));
  row.appendChild(remove);

  if (error) {
    row.appendChild(el('div', 'field-error', error));
  }
  return row;
}

function arrow(direction: 'up' | 'down'): HTMLElement {
  return el(
    'span',
    direction === 'up' ? 'score-arrow arrow-up' : 'score-arrow arrow-down',
    direction === 'up' ? '▲' : '▼',
  );
}

function flipTable(flips: FlipsPayload): HTMLElement {
  const section = el('div', 'flip-section');
  section.appendChild(el('h3', '', 'what single flips would do'));
  const table = el('table', 'flip-table');
  const body = el('tbody');
  for (const row of flips.rows) {
    const tr = el('tr', 'flip-row');
    tr.appendChild(el('td', 'statement-cell', row.statement));
    tr.appendChild(el('td', 'number-cell', String(row.new_score)));
    const cell = el('td', 'direction-cell');
    if (row.direction !== 'unchanged') cell.appendChild(arrow(row.direction));
    tr.appendChild(cell);
    body.appendChild(tr);
  }
  table.appendChild(body);
  section.appendChild(table);
  return section;
}

export function renderSandbox(
  root: HTMLElement,
  caseData: CasePayload,
  model: ModelPayload,
  drafts: DraftChange[],
  result: WhatIfPayload | null,
  flips: FlipsPayload | null,
  fieldErrors: Record<string, string>,
  handlers: SandboxHandlers,
): void {
  root.textContent = '';
  const view = el('div', 'sandbox-view');

  // New score sits top-right; with no edits it just echoes the current
  // score and shows no arrow.
  const header = el('div', 'view-header');
  header.appendChild(el('h2', '', `sandbox: case ${caseData.id}`));
  const panel = el('div', 'score-panel');
  const showResult = result !== null && drafts.length > 0;
  const scoreBox = el(
    'div',
    'score-box',
    String(showResult ? result.new_score : caseData.score),
  );
  scoreBox.id = 'new-score';
  panel.appendChild(scoreBox);
  if (showResult && result.direction !== 'unchanged') {
    const node = arrow(result.direction);
    node.id = 'score-arrow';
    panel.appendChild(node);
  }
  if (showResult) {
    panel.appendChild(
      el('span', 'raw-delta', `raw ${signed(result.old_raw)} to ${signed(result.new_raw)}`),
    );
  }
  header.appendChild(panel);
  view.appendChild(header);

  const form = el('div', 'draft-form');
  drafts.forEach((draft, index) => {
    form.appendChild(
      draftRow(model, draft, index, fieldErrors[draft.factor], handlers),
    );
  });

  const actions = el('div', 'draft-actions');
  const add = el('button', 'add-change', 'add change');
  add.id = 'add-change';
  add.disabled = drafts.length >= MAX_DRAFTS;
  add.addEventListener('click', handlers.onAdd);
  actions.appendChild(add);

  const apply = el('button', 'apply-changes', 'apply');
  apply.id = 'apply-changes';
  apply.disabled = drafts.length === 0;
  apply.addEventListener('click', handlers.onApply);
  actions.appendChild(apply);

  form.appendChild(actions);
  view.appendChild(form);

  if (flips) {
    view.appendChild(flipTable(flips));
  }

  root.appendChild(view);
}
