#!/usr/bin/env python3
"""Play Bob against the quantum engine over the live session API.

Drives the HTTP service in-process: creates a session where a human
plays Bob, opens boxes for thirty trials, and prints the scoreboard.
The punchline of the three-box game is visible in the last column:
every accepted trial is a loss for Bob, and Bob cannot tell why.

To play interactively in a browser instead:

    qga serve --port 8000          # then open frontend/ (see README)
"""
import random

from fastapi.testclient import TestClient

from qgames.service import create_app

client = TestClient(create_app())

created = client.post("/api/v1/sessions", json={
    "game": "three-box",
    "config": {},
    "human_roles": ["bob"],
    "seed": 2026,
    "mode": "series",
}).json()
session = created["session_id"]
headers = {"X-Role-Token": created["tokens"]["bob"]}
print(f"session {session}: you are bob; the engine's alice is quantum")

rng = random.Random(9)
for trial in range(30):
    view = client.get(f"/api/v1/sessions/{session}/view",
                      headers=headers).json()
    box = rng.choice(["A", "B"])
    resp = client.post(
        f"/api/v1/sessions/{session}/moves",
        json={"move": {"move": "open", "box": box},
              "trial_index": view["trial_index"]},
        headers=headers).json()
    board = resp["scoreboard"]
    print(f"trial {trial:2d}: opened {box} | trials={board['trials']} "
          f"accepted={board['accepted']} "
          f"alice wins among accepted={board['wins_among_accepted']}")

final = client.get(f"/api/v1/sessions/{session}/view", headers=headers).json()
board = final["scoreboard"]
print()
print(f"alice accepted {board['accepted']} of {board['trials']} trials "
      f"and won all {board['wins_among_accepted']} of them.")
print("she only ever says 'game on' when she has already won.")
