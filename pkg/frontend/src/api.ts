// Thin typed fetch wrapper. Error responses arrive as a uniform envelope
// {status, code, message}; anything unparseable becomes a generic ApiError.

const API_BASE = '/api/v1';

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let code = 'INTERNAL';
  let message = response.statusText || `request failed (${response.status})`;
  try {
    const envelope = await response.json();
    if (typeof envelope.code === 'string') code = envelope.code;
    if (typeof envelope.message === 'string') message = envelope.message;
  } catch {
    // keep the generic fallback
  }
  throw new ApiError(response.status, code, message);
}

export async function apiGet<T>(path: string): Promise<T> {
  return unwrap<T>(await fetch(`${API_BASE}${path}`));
}

export async function apiPost<T>(path: string, body: unknown): Promise<T> {
  const response = await fetch(`${API_BASE}${path}`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(body),
  });
  return unwrap<T>(response);
}
