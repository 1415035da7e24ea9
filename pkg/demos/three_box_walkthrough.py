#!/usr/bin/env python3
"""The three-box game, step by step.

Alice hides one particle across boxes A, B, and a private box C; Bob
opens A or B; Alice then measures whatever she likes and accepts or
cancels the trial.  She wins accepted trials where Bob found the
particle.  Classically she tops out at 50%.  With a quantum particle she
never loses an accepted trial, and this script shows both facts two
ways: exact arithmetic and a seeded Monte Carlo run.
"""
import numpy as np

from qgames import GameConfig, RandomStream
from qgames import games, strategy
from qgames.games import three_box
from qgames.games.base import ALICE, BOB, THREE_BOX
from qgames.harness import run_trials
from qgames.policies import build_profile

config = GameConfig(disturbance_delta=0.0)

print("=== exact values ===")
classical = strategy.classical_value(THREE_BOX, config)
print(f"best classical play:    {classical.exact_str()}   ({classical.strategy})")
quantum = strategy.quantum_value(THREE_BOX, config)
print(f"quantum conditional win: {quantum.exact_str()}")
print(f"quantum accept rate:     {quantum.details['accept_rate']} "
      f"(found 1/3 of the time, kept 1/3 of those)")

print()
print("=== one trial, state by state ===")
rng = RandomStream(seed=2, trial_index=6)
state = games.new_game(THREE_BOX, config, rng)
state = games.apply_move(
    state, ALICE, three_box.QuantumPrepare(three_box.SUPERPOSITION_AMPS), rng)
print("prepared:", np.round(state.quantum_state.amps.real, 4))
state = games.apply_move(state, BOB, three_box.Open("A"), rng)
print(f"bob opened A, found={state.found}, leftover state:",
      np.round(state.quantum_state.amps.real, 4))
state = games.apply_move(
    state, ALICE, three_box.MeasureOnto(three_box.POST_TARGET_AMPS), rng)
print(f"alice's closing measurement found the target: {state.alice_found}")
move = three_box.Accept() if state.alice_found else three_box.Cancel()
state = games.apply_move(state, ALICE, move, rng)
print("accepted" if state.accepted else "canceled",
      "| payoffs:", games.payoff(state).by_role)

print()
print("=== a hundred thousand seeded trials ===")
report = run_trials(THREE_BOX, build_profile(THREE_BOX, config), config,
                    n=100_000, seed=42)
print(f"accept rate:          {report.accept_rate:.4f}  (exact: 1/9)")
print(f"conditional win rate: {report.conditional_win_rate}  "
      f"({report.n_wins_accepted}/{report.n_accepted} accepted trials won)")

print()
print("=== careless bob only hurts himself ===")
for delta in (0.0, 0.5, 0.9):
    cfg = GameConfig(disturbance_delta=delta)
    v = strategy.quantum_value(THREE_BOX, cfg)
    print(f"delta={delta}: accept-given-find={float(v.details['accept_given_find']):.4f}"
          f"  conditional win={v.exact_str()}")
