/** Thin typed client for the annotation service endpoints. */

export interface TaskItem {
  item_id: string;
  intent: string;
  snippet: string;
}

export interface DonePayload {
  done: true;
  graded: number;
  total: number;
}

export type NextPayload = TaskItem | DonePayload;

export interface Progress {
  graded: number;
  total: number;
}

export type SubmitResult =
  | { kind: 'ok' }
  | { kind: 'conflict' } // already graded server-side; safe to advance
  | { kind: 'rejected'; message: string };

export function isDone(payload: NextPayload): payload is DonePayload {
  return (payload as DonePayload).done === true;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike,
  ) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, '') + path;
  }

  async next(graderId: string): Promise<NextPayload> {
    const response = await this.fetchFn(
      this.url(`/next?grader=${encodeURIComponent(graderId)}`),
    );
    if (!response.ok) {
      throw new Error(`next failed: HTTP ${response.status}`);
    }
    return (await response.json()) as NextPayload;
  }

  async progress(graderId: string): Promise<Progress> {
    const response = await this.fetchFn(
      this.url(`/progress?grader=${encodeURIComponent(graderId)}`),
    );
    if (!response.ok) {
      throw new Error(`progress failed: HTTP ${response.status}`);
    }
    return (await response.json()) as Progress;
  }

  async submitGrade(
    graderId: string,
    itemId: string,
    grade: number,
  ): Promise<SubmitResult> {
    const response = await this.fetchFn(this.url('/grade'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ grader_id: graderId, item_id: itemId, grade }),
    });
    if (response.ok) {
      return { kind: 'ok' };
    }
    if (response.status === 409) {
      return { kind: 'conflict' };
    }
    let message = `HTTP ${response.status}`;
    try {
      const body = (await response.json()) as { error?: string };
      if (body.error) {
        message = body.error;
      }
    } catch {
      // non-JSON error body; keep the status text
    }
    return { kind: 'rejected', message };
  }
}
