import { el } from './format.js';

// Inline failure notice with a retry control, used by every view's fetch path.
export function renderErrorBanner(
  root: HTMLElement,
  message: string,
  onRetry: () => void,
): void {
  root.textContent = '';
  const banner = el('div', 'error-banner');
  banner.appendChild(el('span', 'error-message', message));
  const retry = el('button', 'retry', 'retry');
  retry.addEventListener('click', onRetry);
  banner.appendChild(retry);
  root.appendChild(banner);
}
