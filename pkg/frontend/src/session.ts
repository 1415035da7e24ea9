/**
 * Client session state: server-authoritative, poll-driven.
 *
 * Everything shown to the user comes straight from the latest server
 * payload; the client never counts trials or outcomes itself, so the
 * scoreboard can never drift from the server's series stats.
 */

import { ApiError, SessionApi } from "./api.js";
import { assertViewShape, type ViewPayload, type WireMove } from "./views.js";

export interface SessionOptions {
  /** Completed trials before the explanation panel unlocks. */
  revealAfter?: number;
  seed?: number;
  config?: Record<string, unknown>;
  opponents?: Record<string, unknown>;
}

export type Listener = (session: ClientSession) => void;

export class ClientSession {
  sessionId = "";
  role = "";
  game = "";
  private token = "";
  private latest: ViewPayload | null = null;
  pendingMove = false;
  lastError: string | null = null;
  readonly revealAfter: number;
  private listeners: Listener[] = [];
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(private api: SessionApi, options: SessionOptions = {}) {
    this.revealAfter = options.revealAfter ?? 20;
    this.options = options;
  }

  private options: SessionOptions;

  async start(game: string, humanRole: string): Promise<void> {
    const created = await this.api.createSession(
      game,
      [humanRole],
      this.options.opponents ?? {},
      this.options.config ?? {},
      this.options.seed,
    );
    this.sessionId = created.session_id;
    this.token = created.tokens[humanRole];
    this.role = humanRole;
    this.game = game;
    await this.refresh();
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this);
  }

  private accept(payload: ViewPayload): void {
    assertViewShape(payload.view);
    this.latest = payload;
    this.emit();
  }

  async refresh(): Promise<void> {
    this.accept(await this.api.getView(this.sessionId, this.token));
  }

  startPolling(intervalMs = 750): void {
    this.stopPolling();
    this.timer = setInterval(() => {
      this.refresh().catch(() => {
        // transient; the next tick retries
      });
    }, intervalMs);
  }

  stopPolling(): void {
    if (this.timer !== null) clearInterval(this.timer);
    this.timer = null;
  }

  get payload(): ViewPayload | null {
    return this.latest;
  }

  get myTurn(): boolean {
    return this.latest !== null && this.latest.turn === this.role
      && !this.pendingMove;
  }

  get scoreboard() {
    return this.latest?.scoreboard ?? null;
  }

  /** The mechanism panel unlocks only once enough trials have finished. */
  get revealUnlocked(): boolean {
    const trials = this.latest?.scoreboard.trials ?? 0;
    return trials >= this.revealAfter;
  }

  async submitMove(move: WireMove): Promise<boolean> {
    if (this.latest === null || this.pendingMove) return false;
    this.pendingMove = true;
    this.lastError = null;
    this.emit();
    try {
      this.accept(await this.api.postMove(
        this.sessionId, this.token, move, this.latest.trial_index));
      return true;
    } catch (err) {
      if (err instanceof ApiError && (err.status === 409 || err.status === 422)) {
        // Stale trial or illegal move: keep the UI consistent by
        // re-reading the authoritative state and surfacing the reason.
        this.lastError = err.detail;
        await this.refresh().catch(() => {});
        return false;
      }
      this.lastError = err instanceof Error ? err.message : String(err);
      this.emit();
      throw err;
    } finally {
      this.pendingMove = false;
      this.emit();
    }
  }
}
