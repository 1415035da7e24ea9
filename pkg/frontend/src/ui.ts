/**
 * DOM rendering: one render pass per state change, no local game state.
 *
 * Controls are derived from the server's legal-move list; while a move
 * is in flight everything is disabled, and rejected moves (stale trial,
 * illegal payload) show the server's reason instead of guessing.
 */

import type { ClientSession } from "./session.js";
import type { WireMove } from "./views.js";

const MOVE_LABELS: Record<string, (m: WireMove) => string> = {
  open: (m) => `Open box ${m.box}`,
  inspect_both: () => "Inspect both boxes",
  flip: () => "Flip the coin",
  no_flip: () => "Leave the coin",
  pass: () => "Let the photon pass",
  intercept_resend: (m) => `Intercept (${m.basis} basis)`,
  declare_eavesdropping: () => "Declare eavesdropping",
  declare_clean: () => "Declare the line clean",
};

function el(tag: string, className: string, text = ""): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text) node.textContent = text;
  return node;
}

function outcomeText(session: ClientSession): string {
  const view = session.payload?.view;
  if (!view) return "";
  if (view.game === "three-box" && typeof view.found === "boolean") {
    return view.found
      ? "You found the particle."
      : "The box was empty.";
  }
  if (view.result?.final_coin) {
    return view.result.final_coin === "head"
      ? "The coin ended heads up: you lost this one."
      : "Tails: you won this trial.";
  }
  return "";
}

/**
 * The mechanism behind the three-box scoreboard, shown only after the
 * player has watched enough trials to feel the pattern.
 */
export const REVEAL_LINES = [
  "The engine spreads one particle over three boxes:",
  "start = (|A> + |B> + |C>) / sqrt(3)",
  "Finding it in your box collapses the state to that box;",
  "an empty box leaves (|B> + |C>) / sqrt(2) behind, untouched.",
  "The engine then tests the leftovers against",
  "target = (|A> + |B> - |C>) / sqrt(3)",
  "<leftover | target> = 0, so a trial you would win is never kept;",
  "<found-box | target> = 1/sqrt(3), so a third of your finds are kept.",
  "It only ever says 'game on' when it has already won.",
];

export function render(root: HTMLElement, session: ClientSession): void {
  root.textContent = "";
  const payload = session.payload;
  if (!payload) {
    root.appendChild(el("p", "status", "Connecting..."));
    return;
  }

  const status = session.myTurn
    ? "Your move."
    : payload.closed
      ? "Session closed."
      : `Waiting for ${payload.turn ?? "the engine"}...`;
  root.appendChild(el("p", "status", status));

  const outcome = outcomeText(session);
  if (outcome) root.appendChild(el("p", "outcome", outcome));

  const controls = el("div", "controls");
  for (const move of payload.view.legal_moves) {
    if (move.parameterized) continue; // families need a payload; not Bob's
    const label = MOVE_LABELS[move.move]?.(move) ?? move.move;
    const button = document.createElement("button");
    button.textContent = label;
    button.dataset.move = JSON.stringify(move);
    button.disabled = !session.myTurn;
    if (session.lastError) button.title = session.lastError;
    button.addEventListener("click", () => {
      void session.submitMove(move);
    });
    controls.appendChild(button);
  }
  root.appendChild(controls);

  if (session.lastError) {
    root.appendChild(el("p", "error", `Rejected: ${session.lastError}`));
  }

  const board = payload.scoreboard;
  const scoreboard = el("div", "scoreboard");
  scoreboard.appendChild(el("span", "trials", `trials: ${board.trials}`));
  scoreboard.appendChild(el("span", "accepted", `accepted: ${board.accepted}`));
  scoreboard.appendChild(el(
    "span", "wins",
    `engine wins among accepted: ${board.wins_among_accepted}`));
  root.appendChild(scoreboard);

  if (session.revealUnlocked) {
    const reveal = el("div", "reveal");
    reveal.appendChild(el("h2", "reveal-title", "Why you keep losing"));
    for (const line of REVEAL_LINES) {
      reveal.appendChild(el("p", "reveal-line", line));
    }
    root.appendChild(reveal);
  }
}

export function bind(root: HTMLElement, session: ClientSession): void {
  session.onChange(() => render(root, session));
  render(root, session);
}
