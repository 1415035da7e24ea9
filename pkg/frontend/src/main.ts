/**
 * Bootstrap: read the query string, open a session, start polling.
 *
 *   index.html?game=three-box&role=bob          play Bob vs quantum Alice
 *   index.html?game=meyer-coin&role=bob         the coin game
 *   index.html?game=three-box&role=bob&alice=classical-uniform
 */

import { SessionApi } from "./api.js";
import { ClientSession } from "./session.js";
import { bind } from "./ui.js";

declare global {
  interface Window {
    QGA_API?: string;
  }
}

const params = new URLSearchParams(window.location.search);
const game = params.get("game") ?? "three-box";
const role = params.get("role") ?? "bob";
const apiBase = window.QGA_API ?? params.get("api") ?? "http://127.0.0.1:8000";

const opponents: Record<string, unknown> = {};
const alice = params.get("alice");
if (alice) opponents["alice"] = alice;

const api = new SessionApi(apiBase);
const session = new ClientSession(api, { opponents });

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");

session
  .start(game, role)
  .then(() => {
    bind(root, session);
    session.startPolling();
  })
  .catch((err) => {
    root.textContent = "";
    const banner = document.createElement("p");
    banner.className = "error";
    banner.textContent =
      `Could not reach the game service at ${apiBase} (${err}). ` +
      "Start it with: qga serve --port 8000, then reload.";
    const retry = document.createElement("button");
    retry.textContent = "Retry";
    retry.addEventListener("click", () => window.location.reload());
    root.appendChild(banner);
    root.appendChild(retry);
  });
