import { beforeEach, describe, expect, it } from 'vitest';

import { renderSimilar } from '../src/views/similar.js';
import { similarPayload } from './fixtures.js';

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="root"></div>';
  root = document.getElementById('root') as HTMLElement;
});

describe('similar cases', () => {
  it('lists neighbors with distances and scores', () => {
    renderSimilar(root, similarPayload());
    const entries = [...root.querySelectorAll('.neighbor-entry')].map(
      (n) => n.textContent,
    );
    expect(entries).toEqual([
      'C-0009  distance 0.412  score 13',
      'C-0031  distance 0.587  score 14',
      'C-0017  distance 0.744  score 15',
    ]);
  });

  it('puts the current case first and bolds it', () => {
    renderSimilar(root, similarPayload());
    const rows = [...root.querySelectorAll('.timeline-row')];
    expect(rows[0].classList.contains('current')).toBe(true);
    expect(rows[0].querySelector('.timeline-label')?.textContent).toBe(
      'C-0001 (score 14)',
    );
  });

  it('places events along the shared axis', () => {
    renderSimilar(root, similarPayload());
    const track = root.querySelectorAll('.timeline-track')[1];
    const events = [...track.querySelectorAll<HTMLElement>('.event')];
    expect(events).toHaveLength(3);
    // First event sits at the axis start, last at the axis end.
    expect(events[0].style.left).toBe('0%');
    expect(events[2].style.left).toBe('100%');
    expect(events[0].classList.contains('event-referral')).toBe(true);
    expect(events[2].classList.contains('event-removal')).toBe(true);
  });

  it('includes the note in the event tooltip when present', () => {
    renderSimilar(root, similarPayload());
    const current = root.querySelectorAll('.timeline-track')[0];
    const events = [...current.querySelectorAll<HTMLElement>('.event')];
    expect(events[0].title).toBe('2023-02-14 referral');
    expect(events[1].title).toBe('2024-07-01 investigation: screened in');
  });

  it('shows the axis endpoints and a legend', () => {
    renderSimilar(root, similarPayload());
    const dates = [...root.querySelectorAll('.axis-date')].map(
      (n) => n.textContent,
    );
    expect(dates).toEqual(['2023-01-10', '2025-06-01']);
    expect(root.querySelectorAll('.legend-entry')).toHaveLength(4);
  });

  it('notes truncation when fewer neighbors exist than asked', () => {
    const payload = { ...similarPayload(), truncated: true };
    renderSimilar(root, payload);
    expect(root.querySelector('.truncated-note')?.textContent).toBe(
      'fewer candidates than requested',
    );
  });

  it('shows a placeholder when no case has events', () => {
    const payload = {
      ...similarPayload(),
      empty: true,
      axis_start: null,
      axis_end: null,
      rows: [],
    };
    renderSimilar(root, payload);
    expect(root.querySelector('.placeholder')?.textContent).toBe(
      'no recorded events for these cases',
    );
    expect(root.querySelectorAll('.timeline-row')).toHaveLength(0);
  });
});
