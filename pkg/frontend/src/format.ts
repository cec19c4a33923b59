// Tiny DOM and number helpers shared by all views.

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = '',
  text = '',
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

export function signed(value: number, decimals = 4): string {
  const text = Math.abs(value).toFixed(decimals);
  return value < 0 ? `-${text}` : `+${text}`;
}

export function pct(value: number, decimals = 1): string {
  return `${value.toFixed(decimals)}%`;
}

// Linear position of a value between lo and hi, clamped to [0, 100].
export function scalePct(value: number, lo: number, hi: number): number {
  if (hi <= lo) return 50;
  return Math.min(100, Math.max(0, ((value - lo) / (hi - lo)) * 100));
}
