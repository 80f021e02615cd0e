/** Latest-wins evaluation scheduling.
 *
 * At most one request is in flight; pushes replace the pending payload;
 * starts are spaced by the rate cap. flush() bypasses the spacing so a
 * drag-end settles immediately.
 */

export const RATE_CAP_MS = 33;

export class EvaluationQueue<T> {
  private pending: T | undefined;
  private hasPending = false;
  private inFlight = false;
  private flushRequested = false;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private lastStart = Number.NEGATIVE_INFINITY;

  constructor(
    private readonly run: (payload: T) => Promise<void>,
    private readonly minIntervalMs: number = RATE_CAP_MS,
  ) {}

  push(payload: T): void {
    this.pending = payload;
    this.hasPending = true;
    this.schedule();
  }

  /** Start the pending payload as soon as the in-flight one (if any)
   * finishes, ignoring the rate cap. */
  flush(): void {
    if (this.hasPending) {
      this.flushRequested = true;
      this.schedule();
    }
  }

  private schedule(): void {
    if (this.inFlight || !this.hasPending) {
      return;
    }
    const wait = this.flushRequested
      ? 0
      : Math.max(0, this.lastStart + this.minIntervalMs - Date.now());
    if (wait === 0) {
      this.start();
      return;
    }
    if (this.timer === null) {
      this.timer = setTimeout(() => {
        this.timer = null;
        this.schedule();
      }, wait);
    }
  }

  private start(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    const payload = this.pending as T;
    this.pending = undefined;
    this.hasPending = false;
    this.flushRequested = false;
    this.inFlight = true;
    this.lastStart = Date.now();
    void this.run(payload).finally(() => {
      this.inFlight = false;
      this.schedule();
    });
  }
}
