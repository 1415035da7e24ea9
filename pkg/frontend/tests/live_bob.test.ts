/**
 * Scripted end-to-end run against the real game service: a browser-like
 * client (jsdom DOM, real fetch) plays Bob for thirty trials against the
 * quantum engine by clicking the rendered buttons.
 */
import { type ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it, vi } from "vitest";

import { SessionApi } from "../src/api.js";
import { ClientSession } from "../src/session.js";
import { render } from "../src/ui.js";
import type { ViewPayload } from "../src/views.js";

const PORT = 8739;
const BASE = `http://127.0.0.1:${PORT}`;
let server: ChildProcess;

async function serverReady(): Promise<void> {
  for (let i = 0; i < 120; i++) {
    try {
      const resp = await fetch(`${BASE}/api/v1/sessions/none/view`);
      if (resp.status === 404) return; // service answers: it is up
    } catch {
      // not yet listening
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error("game service did not come up");
}

beforeAll(async () => {
  server = spawn("qga", ["serve", "--port", String(PORT)], {
    stdio: "ignore",
  });
  await serverReady();
});

afterAll(() => {
  server?.kill();
});

const FORBIDDEN = /"(amps|amplitudes|quantum_state|state_vector|wavefunction)"/;

describe("thirty trials of Bob vs quantum Alice", () => {
  it("loses every accepted trial and never sees an amplitude", async () => {
    const api = new SessionApi(BASE);
    const session = new ClientSession(api, { revealAfter: 20, seed: 424242 });
    const captured: ViewPayload[] = [];
    session.onChange((s) => {
      if (s.payload) captured.push(s.payload);
    });
    await session.start("three-box", "bob");

    const root = document.createElement("div");
    document.body.appendChild(root);
    session.onChange(() => render(root, session));
    render(root, session);

    let sawRevealEarly = false;
    for (let trial = 0; trial < 30; trial++) {
      await vi.waitFor(() => {
        if (!session.myTurn) throw new Error("engine still moving");
      });
      const trialsBefore = session.scoreboard!.trials;
      if (trialsBefore < 20 && root.querySelector(".reveal") !== null) {
        sawRevealEarly = true;
      }
      const buttons = [...root.querySelectorAll("button")].filter((b) =>
        b.textContent!.startsWith("Open box"));
      expect(buttons.length).toBe(2);
      buttons[trial % 2].click();
      await vi.waitFor(() => {
        if (session.pendingMove || session.scoreboard!.trials === trialsBefore) {
          throw new Error("move still in flight");
        }
      });
    }

    const board = session.scoreboard!;
    expect(board.trials).toBe(30);
    // The punchline: every trial the engine accepted, it won.
    expect(board.wins_among_accepted).toBe(board.accepted);
    expect(board.accepted).toBeGreaterThan(0);

    // No payload ever carried hidden state, by schema guard and by the
    // raw bytes of everything the client received.
    expect(captured.length).toBeGreaterThan(30);
    for (const payload of captured) {
      expect(JSON.stringify(payload)).not.toMatch(FORBIDDEN);
    }

    // The mechanism panel stayed hidden through trial 20 and is up now.
    expect(sawRevealEarly).toBe(false);
    expect(board.trials).toBeGreaterThanOrEqual(20);
    expect(root.querySelector(".reveal")).not.toBeNull();
  }, 60_000);

  it("rejects a stale double-click with a 409 and stays consistent", async () => {
    const api = new SessionApi(BASE);
    const session = new ClientSession(api, { seed: 99 });
    await session.start("three-box", "bob");
    const stale = session.payload!.trial_index;
    const first = await session.submitMove({ move: "open", box: "A" });
    expect(first).toBe(true);
    // Re-post against the already-finished trial, as a double click would.
    const again = await api
      .postMove(session.sessionId, (session as never as { token: string }).token,
                { move: "open", box: "A" }, stale)
      .then(() => "accepted")
      .catch((err) => err.status);
    expect(again).toBe(409);
  });
});
