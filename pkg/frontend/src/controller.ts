/** Session state machine: one task on screen, grade, advance.
 *
 * Guarantees the service relies on:
 *  - at most one in-flight submission (repeat clicks while submitting are
 *    ignored);
 *  - a network failure mid-submit keeps the task and offers a retry; if the
 *    grade actually landed before the failure, the retry's 409 conflict is
 *    treated as success and the session advances; a grade is never
 *    silently dropped and never double-counted;
 *  - only integer grades 0-4 can ever be issued.
 */

import { ApiClient, isDone, NextPayload, TaskItem } from './api.js';
import { isValidGrade } from './rubric.js';

export type ViewState =
  | { kind: 'loading' }
  | { kind: 'grading'; item: TaskItem; graded: number; total: number; notice?: string }
  | { kind: 'submitting'; item: TaskItem; graded: number; total: number }
  | { kind: 'offline'; message: string; pendingGrade?: number }
  | { kind: 'done'; graded: number; total: number }
  | { kind: 'stopped'; graded: number; total: number };

export class SessionController {
  private state: ViewState = { kind: 'loading' };
  private listeners: Array<(state: ViewState) => void> = [];
  private graded = 0;
  private total = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly graderId: string,
  ) {}

  onChange(listener: (state: ViewState) => void): void {
    this.listeners.push(listener);
  }

  getState(): ViewState {
    return this.state;
  }

  private setState(state: ViewState): void {
    this.state = state;
    for (const listener of this.listeners) {
      listener(state);
    }
  }

  async start(): Promise<void> {
    this.setState({ kind: 'loading' });
    try {
      const progress = await this.api.progress(this.graderId);
      this.graded = progress.graded;
      this.total = progress.total;
      await this.advance();
    } catch (error) {
      this.setState({ kind: 'offline', message: String(error) });
    }
  }

  private async advance(): Promise<void> {
    let payload: NextPayload;
    try {
      payload = await this.api.next(this.graderId);
    } catch (error) {
      this.setState({ kind: 'offline', message: String(error) });
      return;
    }
    if (isDone(payload)) {
      this.graded = payload.graded;
      this.total = payload.total;
      this.setState({ kind: 'done', graded: payload.graded, total: payload.total });
      return;
    }
    this.setState({
      kind: 'grading',
      item: payload,
      graded: this.graded,
      total: this.total,
    });
  }

  /** Handle a grade button (or key) press. */
  async grade(value: number): Promise<void> {
    if (this.state.kind !== 'grading') {
      return; // double-click protection: one submission per task
    }
    if (!isValidGrade(value)) {
      return; // buttons are the only input, but belts and braces
    }
    const item = this.state.item;
    this.setState({
      kind: 'submitting', item, graded: this.graded, total: this.total,
    });
    let result;
    try {
      result = await this.api.submitGrade(this.graderId, item.item_id, value);
    } catch (error) {
      // network failure: the grade may or may not have landed; retry goes
      // through the server's conflict handling either way
      this.setState({
        kind: 'offline',
        message: `Submission failed: ${String(error)}. Your grade was not lost; retry.`,
        pendingGrade: value,
      });
      this.pendingItem = item;
      return;
    }
    if (result.kind === 'rejected') {
      this.setState({
        kind: 'grading',
        item,
        graded: this.graded,
        total: this.total,
        notice: `Rejected: ${result.message}`,
      });
      return;
    }
    // ok, or conflict (already recorded): either way the grade is stored
    this.graded += 1;
    await this.advance();
  }

  private pendingItem: TaskItem | null = null;

  /** Retry after a connectivity failure. */
  async retry(): Promise<void> {
    if (this.state.kind !== 'offline') {
      return;
    }
    const pendingGrade = this.state.pendingGrade;
    if (pendingGrade !== undefined && this.pendingItem !== null) {
      const item = this.pendingItem;
      this.pendingItem = null;
      this.setState({
        kind: 'grading', item, graded: this.graded, total: this.total,
      });
      await this.grade(pendingGrade);
      return;
    }
    await this.start();
  }

  /** Graders may stop at any moment; progress is preserved server-side. */
  stop(): void {
    if (this.state.kind === 'grading' || this.state.kind === 'loading') {
      this.setState({ kind: 'stopped', graded: this.graded, total: this.total });
    }
  }
}
