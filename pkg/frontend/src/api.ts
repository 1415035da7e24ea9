/** Thin typed client for the session REST API. */

import type { ViewPayload, WireMove } from "./views.js";

export interface CreatedSession {
  session_id: string;
  seed: number;
  tokens: Record<string, string>;
}

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function parseError(resp: Response): Promise<never> {
  let detail = resp.statusText;
  try {
    const body = await resp.json();
    if (typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(resp.status, detail);
}

export class SessionApi {
  constructor(private baseUrl: string) {}

  async createSession(
    game: string,
    humanRoles: string[],
    opponents: Record<string, unknown> = {},
    config: Record<string, unknown> = {},
    seed?: number,
  ): Promise<CreatedSession> {
    const resp = await fetch(`${this.baseUrl}/api/v1/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({
        game,
        config,
        human_roles: humanRoles,
        mode: "series",
        opponents,
        ...(seed !== undefined ? { seed } : {}),
      }),
    });
    if (!resp.ok) await parseError(resp);
    return resp.json();
  }

  async getView(sessionId: string, token: string): Promise<ViewPayload> {
    const resp = await fetch(
      `${this.baseUrl}/api/v1/sessions/${sessionId}/view`,
      { headers: { "X-Role-Token": token } },
    );
    if (!resp.ok) await parseError(resp);
    return resp.json();
  }

  async postMove(
    sessionId: string,
    token: string,
    move: WireMove,
    trialIndex: number,
  ): Promise<ViewPayload> {
    const resp = await fetch(
      `${this.baseUrl}/api/v1/sessions/${sessionId}/moves`,
      {
        method: "POST",
        headers: {
          "Content-Type": "application/json",
          "X-Role-Token": token,
        },
        body: JSON.stringify({ move, trial_index: trialIndex }),
      },
    );
    if (!resp.ok) await parseError(resp);
    return resp.json();
  }
}
