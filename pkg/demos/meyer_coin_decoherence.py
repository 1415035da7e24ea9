#!/usr/bin/env python3
"""Meyer's coin trick, and why handling the coin kills it.

A coin sits heads up; Alice, Bob, Alice each flip or don't, blind.  A
quantum Alice rotates the coin into the flip-invariant superposition and
back, winning every time -- until Bob's classical hands dephase the coin.
The script sweeps the dephasing strength from 0 to 1 and watches the
perfect strategy decay to a coin toss.
"""
from qgames import GameConfig
from qgames import strategy
from qgames.games.base import MEYER
from qgames.harness import run_trials
from qgames.policies import build_profile

print("=== exact values ===")
classical = strategy.classical_value(MEYER, GameConfig())
print(f"classical value (8 deterministic profiles, mixed minimax): "
      f"{classical.exact_str()}")
perfect = strategy.quantum_value(MEYER, GameConfig(dephasing_p=0.0))
print(f"quantum value with an untouched coin: {perfect.exact_str()}")

print()
print("=== dephasing sweep: exact curve vs Monte Carlo ===")
print(f"{'p':>5} {'exact 1-p/2':>12} {'simulated':>10}")
for p in (0.0, 0.25, 0.5, 0.75, 1.0):
    cfg = GameConfig(dephasing_p=p)
    exact = strategy.quantum_value(MEYER, cfg)
    report = run_trials(MEYER, build_profile(MEYER, cfg), cfg,
                        n=20_000, seed=7)
    print(f"{p:5.2f} {float(exact.value):12.4f} "
          f"{report.conditional_win_rate:10.4f}")

print()
print("a fully classical Bob (p=1) erases the quantum edge: back to 1/2")
