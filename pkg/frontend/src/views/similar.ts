import { el, scalePct } from '../format.js';
import type { SimilarPayload, TimelineRowPayload } from '../types.js';

// Supervision / Review: the current case and its nearest neighbors lined up
// on one shared calendar axis, one glyph per event kind.

const EVENT_GLYPHS: Record<string, string> = {
  referral: '●',
  investigation: '■',
  services: '▲',
  removal: '✖',
};

function legend(): HTMLElement {
  const node = el('div', 'timeline-legend');
  for (const [kind, glyph] of Object.entries(EVENT_GLYPHS)) {
    const entry = el('span', `legend-entry event-${kind}`);
    entry.appendChild(el('span', 'legend-glyph', glyph));
    entry.appendChild(el('span', 'legend-label', kind));
    node.appendChild(entry);
  }
  return node;
}

function timelineRow(
  row: TimelineRowPayload,
  start: number,
  end: number,
): HTMLElement {
  const node = el(
    'div',
    row.is_current ? 'timeline-row current' : 'timeline-row',
  );
  node.appendChild(
    el('span', 'timeline-label', `${row.case_id} (score ${row.score})`),
  );
  const track = el('div', 'timeline-track');
  for (const event of row.events) {
    const glyph = el(
      'span',
      `event event-${event.kind}`,
      EVENT_GLYPHS[event.kind] ?? '●',
    );
    glyph.style.left = `${scalePct(Date.parse(event.date), start, end)}%`;
    glyph.title = event.note
      ? `${event.date} ${event.kind}: ${event.note}`
      : `${event.date} ${event.kind}`;
    track.appendChild(glyph);
  }
  node.appendChild(track);
  return node;
}

export function renderSimilar(root: HTMLElement, payload: SimilarPayload): void {
  root.textContent = '';
  const view = el('div', 'similar-view');

  const header = el('div', 'view-header');
  header.appendChild(
    el('h2', '', `cases similar to ${payload.case_id} (score ${payload.score})`),
  );
  header.appendChild(el('div', 'score-box', String(payload.score)));
  view.appendChild(header);

  const list = el('div', 'neighbor-list');
  for (const neighbor of payload.neighbors) {
    list.appendChild(
      el(
        'div',
        'neighbor-entry',
        `${neighbor.id}  distance ${neighbor.distance.toFixed(3)}  score ${neighbor.score}`,
      ),
    );
  }
  if (payload.truncated) {
    list.appendChild(
      el('div', 'truncated-note', 'fewer candidates than requested'),
    );
  }
  view.appendChild(list);

  if (payload.empty || payload.axis_start === null || payload.axis_end === null) {
    view.appendChild(el('p', 'placeholder', 'no recorded events for these cases'));
    root.appendChild(view);
    return;
  }

  const start = Date.parse(payload.axis_start);
  const end = Date.parse(payload.axis_end);
  const axis = el('div', 'timeline-axis');
  axis.appendChild(el('span', 'axis-date', payload.axis_start));
  axis.appendChild(el('span', 'axis-date', payload.axis_end));
  view.appendChild(axis);

  for (const row of payload.rows) {
    view.appendChild(timelineRow(row, start, end));
  }
  view.appendChild(legend());
  root.appendChild(view);
}
