/**
 * The view schema this client consumes.
 *
 * The server sends role-filtered views; the client renders only fields
 * listed here and refuses anything that smells like hidden state.  There
 * is deliberately no amplitude math anywhere in this bundle: the server
 * is the only party that knows the hidden preparation.
 */

export interface WireMove {
  move: string;
  box?: string;
  basis?: string;
  value?: number;
  parameterized?: boolean;
}

export interface RoleView {
  game: string;
  stage: number;
  to_move: string | null;
  terminal: boolean;
  you: string;
  legal_moves: WireMove[];
  your_moves?: WireMove[];
  found?: boolean | null;
  caught_cheating?: boolean;
  result?: {
    accepted?: boolean | null;
    win?: boolean | null;
    caught_cheating?: boolean;
    final_coin?: string;
    declared?: string;
    eve_touched?: boolean;
  };
}

export interface Scoreboard {
  trials: number;
  accepted: number;
  wins_among_accepted: number;
  conditional_win_rate: number;
  wilson95: [number, number];
}

export interface ViewPayload {
  session_id: string;
  trial_index: number;
  turn: string | null;
  closed: boolean;
  mode: string;
  scoreboard: Scoreboard;
  view: RoleView;
}

/** Every view field the client will touch, exhaustively. */
export const ALLOWED_VIEW_FIELDS: ReadonlySet<string> = new Set([
  "game", "stage", "to_move", "terminal", "you", "legal_moves",
  "your_moves", "found", "caught_cheating", "result",
  // result sub-fields
  "accepted", "win", "final_coin", "declared", "eve_touched",
  // wire-move sub-fields
  "move", "box", "basis", "value", "parameterized",
]);

/** Field names that would indicate hidden quantum state leaking through. */
export const FORBIDDEN_VIEW_FIELDS: ReadonlySet<string> = new Set([
  "amps", "amplitudes", "quantum_state", "coin", "state_vector", "matrix",
  "wavefunction", "prep",
]);

/**
 * Structural guard run against every payload before rendering.  Throws
 * when a field outside the schema shows up, so a server regression can
 * never silently put hidden state on screen.
 */
export function assertViewShape(view: unknown, path = "view"): void {
  if (view === null || typeof view !== "object") return;
  if (Array.isArray(view)) {
    view.forEach((item, i) => assertViewShape(item, `${path}[${i}]`));
    return;
  }
  for (const [key, value] of Object.entries(view as Record<string, unknown>)) {
    if (FORBIDDEN_VIEW_FIELDS.has(key)) {
      throw new Error(`hidden-state field ${key} at ${path}`);
    }
    if (!ALLOWED_VIEW_FIELDS.has(key)) {
      throw new Error(`unexpected view field ${key} at ${path}`);
    }
    assertViewShape(value, `${path}.${key}`);
  }
}
