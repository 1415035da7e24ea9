/** ClientSession against a scripted fake server: no network, no drift. */
import { beforeEach, describe, expect, it } from "vitest";

import { ApiError } from "../src/api.js";
import { ClientSession } from "../src/session.js";
import { render } from "../src/ui.js";
import type { ViewPayload, WireMove } from "../src/views.js";

function payload(partial: Partial<ViewPayload> & { trials?: number }): ViewPayload {
  const trials = partial.trials ?? 0;
  return {
    session_id: "s1",
    trial_index: trials,
    turn: "bob",
    closed: false,
    mode: "series",
    scoreboard: {
      trials,
      accepted: Math.floor(trials / 3),
      wins_among_accepted: Math.floor(trials / 3),
      conditional_win_rate: trials ? 1.0 : 0.0,
      wilson95: [0, 1],
    },
    view: {
      game: "three-box",
      stage: 1,
      to_move: "bob",
      terminal: false,
      you: "bob",
      legal_moves: [
        { move: "open", box: "A" },
        { move: "open", box: "B" },
        { move: "inspect_both" },
      ],
    },
    ...partial,
  };
}

class FakeApi {
  trials = 0;
  rejectNext: ApiError | null = null;
  moves: WireMove[] = [];

  async createSession() {
    return { session_id: "s1", seed: 1, tokens: { bob: "tok" } };
  }

  async getView(): Promise<ViewPayload> {
    return payload({ trials: this.trials });
  }

  async postMove(_id: string, _tok: string, move: WireMove):
      Promise<ViewPayload> {
    if (this.rejectNext) {
      const err = this.rejectNext;
      this.rejectNext = null;
      throw err;
    }
    this.moves.push(move);
    this.trials += 1;
    return payload({ trials: this.trials });
  }
}

describe("ClientSession", () => {
  let api: FakeApi;
  let session: ClientSession;

  beforeEach(async () => {
    api = new FakeApi();
    session = new ClientSession(api as never, { revealAfter: 20 });
    await session.start("three-box", "bob");
  });

  it("mirrors the server scoreboard exactly", async () => {
    await session.submitMove({ move: "open", box: "A" });
    await session.submitMove({ move: "open", box: "B" });
    expect(session.scoreboard).toEqual(payload({ trials: 2 }).scoreboard);
  });

  it("reveal unlocks exactly at the threshold", async () => {
    for (let i = 0; i < 19; i++) {
      await session.submitMove({ move: "open", box: "A" });
      expect(session.revealUnlocked).toBe(i + 1 >= 20);
    }
    expect(session.revealUnlocked).toBe(false);
    await session.submitMove({ move: "open", box: "A" });
    expect(session.revealUnlocked).toBe(true);
  });

  it("keeps state consistent after a 409", async () => {
    api.rejectNext = new ApiError(409, "trial 0 is over");
    const ok = await session.submitMove({ move: "open", box: "A" });
    expect(ok).toBe(false);
    expect(session.lastError).toMatch(/trial 0 is over/);
    expect(session.pendingMove).toBe(false);
    expect(api.moves.length).toBe(0);
    // and the next legal move goes through
    const again = await session.submitMove({ move: "open", box: "A" });
    expect(again).toBe(true);
  });

  it("refuses hidden-state payloads", async () => {
    api.getView = async () =>
      ({ ...payload({}), view: { game: "three-box", amps: [1, 0, 0] } }) as never;
    await expect(session.refresh()).rejects.toThrow(/amps/);
  });
});

describe("render", () => {
  it("disables controls while a move is pending and off-turn", async () => {
    const api = new FakeApi();
    const session = new ClientSession(api as never);
    await session.start("three-box", "bob");
    const root = document.createElement("div");
    render(root, session);
    const buttons = [...root.querySelectorAll("button")];
    expect(buttons.map((b) => b.textContent)).toEqual(
      ["Open box A", "Open box B", "Inspect both boxes"]);
    expect(buttons.every((b) => !b.disabled)).toBe(true);

    session.pendingMove = true;
    render(root, session);
    expect([...root.querySelectorAll("button")].every((b) => b.disabled))
      .toBe(true);
  });

  it("shows the reveal panel only after the threshold", async () => {
    const api = new FakeApi();
    const session = new ClientSession(api as never, { revealAfter: 20 });
    await session.start("three-box", "bob");
    const root = document.createElement("div");
    api.trials = 19;
    await session.refresh();
    render(root, session);
    expect(root.querySelector(".reveal")).toBeNull();
    api.trials = 20;
    await session.refresh();
    render(root, session);
    expect(root.querySelector(".reveal")).not.toBeNull();
    expect(root.querySelector(".reveal")!.textContent).toMatch(/sqrt\(3\)/);
  });

  it("surfaces rejection reasons", async () => {
    const api = new FakeApi();
    const session = new ClientSession(api as never);
    await session.start("three-box", "bob");
    api.rejectNext = new ApiError(422, "unknown move");
    await session.submitMove({ move: "open", box: "Z" });
    const root = document.createElement("div");
    render(root, session);
    expect(root.querySelector(".error")?.textContent).toMatch(/unknown move/);
  });
});
