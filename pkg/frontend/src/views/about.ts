import { el, pct, scalePct } from '../format.js';
import type {
  DistributionsPayload,
  DistributionWidget,
  ImportancePayload,
} from '../types.js';

// About Model: global permutation importance as horizontal bars, and the
// per-score factor distributions behind a 1-20 score selector.

export function renderImportance(
  root: HTMLElement,
  payload: ImportancePayload,
): void {
  root.textContent = '';
  const view = el('div', 'importance-view');
  view.appendChild(el('h2', '', 'global factor importance'));
  view.appendChild(
    el(
      'p',
      'subtitle',
      `${payload.metric_name} increase under permutation, ` +
        `${payload.repeats} repeats, seed ${payload.seed}`,
    ),
  );
  for (const entry of payload.entries) {
    const row = el('div', 'importance-row');
    row.appendChild(el('span', 'importance-label', entry.description));
    const track = el('div', 'importance-track');
    const fill = el('div', 'importance-fill');
    fill.style.width = `${entry.relative_importance * 100}%`;
    track.appendChild(fill);
    row.appendChild(track);
    row.appendChild(
      el('span', 'importance-number', entry.raw_importance.toFixed(4)),
    );
    view.appendChild(row);
  }
  root.appendChild(view);
}

export interface DistributionsHandlers {
  onScore(score: number): void;
}

function binaryWidget(widget: DistributionWidget): HTMLElement {
  const node = el('div', 'widget progress-widget');
  const share = widget.pct_true ?? 0;
  const track = el('div', 'progress-track');
  const fill = el('div', 'progress-fill');
  fill.style.width = `${share}%`;
  track.appendChild(fill);
  node.appendChild(track);
  node.appendChild(el('span', 'widget-number', `${pct(share)} true`));
  return node;
}

function boxWidget(widget: DistributionWidget): HTMLElement {
  const node = el('div', 'widget box-widget');
  const box = widget.box;
  if (!box) return node;
  const lo = box.global_min;
  const hi = box.global_max;
  const track = el('div', 'box-track');

  // Whisker spans the slice extremes; the track itself is the global range.
  const whisker = el('div', 'box-whisker');
  whisker.style.left = `${scalePct(box.slice_min, lo, hi)}%`;
  whisker.style.width = `${
    scalePct(box.slice_max, lo, hi) - scalePct(box.slice_min, lo, hi)
  }%`;
  track.appendChild(whisker);

  const body = el('div', 'box-body');
  body.style.left = `${scalePct(box.q1, lo, hi)}%`;
  body.style.width = `${scalePct(box.q3, lo, hi) - scalePct(box.q1, lo, hi)}%`;
  track.appendChild(body);

  const median = el('div', 'box-median');
  median.style.left = `${scalePct(box.median, lo, hi)}%`;
  median.title = `median ${box.median}`;
  track.appendChild(median);

  node.appendChild(el('span', 'box-end', String(lo)));
  node.appendChild(track);
  node.appendChild(el('span', 'box-end', String(hi)));
  return node;
}

function segmentWidget(widget: DistributionWidget): HTMLElement {
  const node = el('div', 'widget segment-widget');
  const bar = el('div', 'segment-bar');
  for (const segment of widget.segments ?? []) {
    const span = el('span', 'segment');
    span.style.width = `${segment.pct}%`;
    span.title = `${segment.label} — ${pct(segment.pct)}`;
    bar.appendChild(span);
  }
  node.appendChild(bar);
  return node;
}

export function renderDistributions(
  root: HTMLElement,
  payload: DistributionsPayload,
  handlers: DistributionsHandlers,
): void {
  root.textContent = '';
  const view = el('div', 'distributions-view');

  const header = el('div', 'view-header');
  header.appendChild(el('h2', '', 'factor distributions by score'));
  const select = el('select', 'score-select');
  select.id = 'score-select';
  for (let score = 1; score <= 20; score++) {
    const option = el('option', '', String(score));
    option.value = String(score);
    select.appendChild(option);
  }
  select.value = String(payload.score);
  select.addEventListener('change', () => handlers.onScore(Number(select.value)));
  header.appendChild(select);
  view.appendChild(header);

  if (payload.case_count === 0) {
    view.appendChild(
      el('p', 'placeholder', 'no past cases with this score'),
    );
    root.appendChild(view);
    return;
  }

  const rate =
    payload.removal_rate_pct === null ? 'n/a' : pct(payload.removal_rate_pct);
  view.appendChild(
    el(
      'p',
      'headline',
      `${payload.case_count} reference cases, removal rate ${rate}`,
    ),
  );

  for (const widget of payload.factors) {
    const row = el('div', 'widget-row');
    const label = el('span', 'widget-label', widget.display_name);
    if (widget.category_code) {
      const chip = el('span', 'chip', widget.category_code);
      chip.title = widget.category_name;
      label.prepend(chip);
    }
    row.appendChild(label);
    if (widget.kind === 'binary') row.appendChild(binaryWidget(widget));
    else if (widget.kind === 'numeric') row.appendChild(boxWidget(widget));
    else row.appendChild(segmentWidget(widget));
    view.appendChild(row);
  }
  root.appendChild(view);
}
