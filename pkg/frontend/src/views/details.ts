import { el, signed } from '../format.js';
import type {
  CasePayload,
  ContributionRow,
  ContributionsPayload,
} from '../types.js';

// Case-Specific Details: the contribution table with signed bars. Risk bars
// point right in red, protective bars point left in blue, and widths scale
// against the largest magnitude currently in view.

export type SortOrder = 'server' | 'desc' | 'asc';

export interface DetailsOptions {
  topTen: boolean;
  split: boolean;
  sort: SortOrder;
  query: string;
  category: string;
}

export interface DetailsHandlers {
  onOptions(next: Partial<DetailsOptions>): void;
}

export const defaultDetailsOptions: DetailsOptions = {
  topTen: true,
  split: false,
  sort: 'server',
  query: '',
  category: '',
};

function orderRows(rows: ContributionRow[], sort: SortOrder): ContributionRow[] {
  if (sort === 'server') return rows;
  const copy = [...rows];
  copy.sort((a, b) =>
    sort === 'asc' ? a.contribution - b.contribution : b.contribution - a.contribution,
  );
  return copy;
}

function chip(row: ContributionRow): HTMLElement {
  const node = el('span', 'chip', row.category_code);
  node.title = row.category_name;
  return node;
}

function bar(row: ContributionRow, maxAbs: number): HTMLElement {
  const track = el('div', 'bar-track');
  track.appendChild(el('div', 'bar-center'));
  const fill = el('div', 'bar-fill');
  const width = maxAbs > 0 ? (Math.abs(row.contribution) / maxAbs) * 50 : 0;
  fill.style.width = `${width}%`;
  if (row.label === 'risk') {
    fill.classList.add('bar-risk');
    fill.dataset.direction = 'right';
  } else if (row.label === 'protective') {
    fill.classList.add('bar-protective');
    fill.dataset.direction = 'left';
  } else {
    fill.dataset.direction = 'none';
  }
  track.appendChild(fill);
  return track;
}

function contributionTable(
  rows: ContributionRow[],
  sort: SortOrder,
  maxAbs: number,
): HTMLTableElement {
  const table = el('table', 'contrib-table');
  const body = el('tbody');
  for (const row of orderRows(rows, sort)) {
    const tr = el('tr', 'contrib-row');
    tr.appendChild(el('td', 'chip-cell')).appendChild(chip(row));
    tr.appendChild(el('td', 'name-cell', row.display_name));
    tr.appendChild(el('td', 'value-cell', row.displayed_value));
    tr.appendChild(el('td', 'number-cell', signed(row.contribution)));
    tr.appendChild(el('td', 'bar-cell')).appendChild(bar(row, maxAbs));
    body.appendChild(tr);
  }
  table.appendChild(body);
  return table;
}

function controls(
  contribs: ContributionsPayload,
  options: DetailsOptions,
  handlers: DetailsHandlers,
): HTMLElement {
  const row = el('div', 'controls');

  const topToggle = el('button', 'toggle', options.topTen ? 'show all' : 'top 10');
  topToggle.id = 'toggle-top';
  topToggle.addEventListener('click', () =>
    handlers.onOptions({ topTen: !options.topTen }),
  );
  row.appendChild(topToggle);

  const splitToggle = el(
    'button',
    'toggle',
    options.split ? 'single table' : 'split view',
  );
  splitToggle.id = 'toggle-split';
  splitToggle.addEventListener('click', () =>
    handlers.onOptions({ split: !options.split }),
  );
  row.appendChild(splitToggle);

  const nextSort: Record<SortOrder, SortOrder> = {
    server: 'desc',
    desc: 'asc',
    asc: 'server',
  };
  const sortToggle = el('button', 'toggle', `sort: ${options.sort}`);
  sortToggle.id = 'toggle-sort';
  sortToggle.addEventListener('click', () =>
    handlers.onOptions({ sort: nextSort[options.sort] }),
  );
  row.appendChild(sortToggle);

  // Search and the category filter only apply to the full factor list.
  const search = el('input', 'search');
  search.id = 'search';
  search.type = 'text';
  search.placeholder = 'search factors';
  search.value = options.query;
  search.disabled = options.topTen || options.split;
  search.addEventListener('change', () =>
    handlers.onOptions({ query: search.value }),
  );
  row.appendChild(search);

  const category = el('select', 'category-filter');
  category.id = 'category-filter';
  category.disabled = options.topTen || options.split;
  const codes = new Map<string, string>();
  for (const r of allRows(contribs)) {
    if (r.category_code) codes.set(r.category_code, r.category_name);
  }
  const any = el('option', '', 'all categories');
  any.value = '';
  category.appendChild(any);
  for (const [code, name] of codes) {
    const option = el('option', '', code);
    option.value = code;
    option.title = name;
    category.appendChild(option);
  }
  category.value = options.category;
  category.addEventListener('change', () =>
    handlers.onOptions({ category: category.value }),
  );
  row.appendChild(category);

  return row;
}

function allRows(contribs: ContributionsPayload): ContributionRow[] {
  if (contribs.view === 'split') {
    return [...(contribs.risk ?? []), ...(contribs.protective ?? [])];
  }
  return contribs.rows ?? [];
}

export function renderDetails(
  root: HTMLElement,
  caseData: CasePayload,
  contribs: ContributionsPayload,
  options: DetailsOptions,
  handlers: DetailsHandlers,
): void {
  root.textContent = '';
  const view = el('div', 'details-view');

  const header = el('div', 'view-header');
  header.appendChild(el('h2', '', `case ${caseData.id}`));
  const scoreBox = el('div', 'score-box', String(caseData.score));
  scoreBox.title = `raw output ${signed(caseData.raw_output)}`;
  header.appendChild(scoreBox);
  view.appendChild(header);

  view.appendChild(controls(contribs, options, handlers));

  const maxAbs = Math.max(
    0,
    ...allRows(contribs).map((r) => Math.abs(r.contribution)),
  );

  if (contribs.view === 'split') {
    const grid = el('div', 'split-grid');
    const riskPane = el('div', 'split-pane risk-pane');
    riskPane.appendChild(el('h3', '', 'risk factors'));
    riskPane.appendChild(
      contributionTable(contribs.risk ?? [], options.sort, maxAbs),
    );
    const protectivePane = el('div', 'split-pane protective-pane');
    protectivePane.appendChild(el('h3', '', 'protective factors'));
    protectivePane.appendChild(
      contributionTable(contribs.protective ?? [], options.sort, maxAbs),
    );
    grid.appendChild(riskPane);
    grid.appendChild(protectivePane);
    view.appendChild(grid);
  } else {
    view.appendChild(
      contributionTable(contribs.rows ?? [], options.sort, maxAbs),
    );
  }

  root.appendChild(view);
}
