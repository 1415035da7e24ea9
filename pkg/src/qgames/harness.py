"""Reproducible Monte Carlo runner, statistics, and report emission.

Every trial gets its own counter-based stream keyed (seed, trial_index),
so a report is a pure function of (game, profile spec, config, n, seed):
trials can run in any order and across any number of worker processes
with bit-identical counters.
"""
from __future__ import annotations

import csv
import hashlib
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from . import games
from .games.base import BB84, GameConfig, TEAM2_EVE
from .policies import StrategyProfile, build_profile
from .rng import RandomStream

Z95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass(frozen=True, slots=True)
class TrialRecord:
    """One trial's full story; reconstructible from (seed, trial, config)."""

    trial_index: int
    kind: str
    moves: tuple          # ((role, wire-dict), ...)
    found: Optional[bool]
    accepted: Optional[bool]
    win: bool
    payoffs: dict
    rng_draws: int


@dataclass
class RunReport:
    game: str
    config_hash: str
    profile: str
    n_trials: int
    n_accepted: int
    n_wins_accepted: int
    accept_rate: float
    conditional_win_rate: float
    wilson95: tuple[float, float]
    seed: int
    no_accepted_trials: bool
    wall_time_ms: float

    FIELDS = ("game", "config_hash", "profile", "n_trials", "n_accepted",
              "n_wins_accepted", "accept_rate", "conditional_win_rate",
              "wilson95", "seed", "no_accepted_trials", "wall_time_ms")

    def to_dict(self) -> dict:
        return {
            "game": self.game,
            "config_hash": self.config_hash,
            "profile": self.profile,
            "n_trials": self.n_trials,
            "n_accepted": self.n_accepted,
            "n_wins_accepted": self.n_wins_accepted,
            "accept_rate": self.accept_rate,
            "conditional_win_rate": self.conditional_win_rate,
            "wilson95": [self.wilson95[0], self.wilson95[1]],
            "seed": self.seed,
            "no_accepted_trials": self.no_accepted_trials,
            "wall_time_ms": self.wall_time_ms,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunReport":
        data = dict(data)
        data["wilson95"] = tuple(data["wilson95"])
        return cls(**data)


def wilson95(successes: int, n: int) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if n == 0:
        return (0.0, 1.0)
    z2 = Z95 * Z95
    phat = successes / n
    denom = 1.0 + z2 / n
    center = (phat + z2 / (2 * n)) / denom
    half = (Z95 / denom) * math.sqrt(phat * (1 - phat) / n + z2 / (4 * n * n))
    return (max(0.0, center - half), min(1.0, center + half))


def config_hash(kind: str, config: GameConfig, profile_spec: dict) -> str:
    payload = json.dumps({"game": kind, "config": config.to_dict(),
                          "profile": profile_spec}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _terminal_state(kind: str, profile: StrategyProfile, config: GameConfig,
                    rng: RandomStream):
    mod = games.module_for(kind)
    state = mod.new(config, rng)
    profile.begin_trial(rng)
    if kind == BB84:
        eve = profile.policies.get(TEAM2_EVE)
        if eve is not None and hasattr(eve, "plan"):
            state = mod.apply_many(
                state, TEAM2_EVE, eve.plan(config.bb84_n_photons, rng), rng)
    policies = profile.policies
    slim_view = mod.slim_view
    apply_move = mod.apply
    while not state.terminal:
        role = state.to_move
        move = policies[role].choose(slim_view(state, role), rng)
        state = apply_move(state, role, move, rng)
    return state


def play_trial(kind: str, profile: StrategyProfile, config: GameConfig,
               rng: RandomStream) -> TrialRecord:
    """Run one trial to its terminal state under the given profile."""
    trial_index = rng.trial_index
    state = _terminal_state(kind, profile, config, rng)
    o = games.outcome(state)
    pay = games.payoff(state)
    return TrialRecord(
        trial_index=trial_index, kind=kind,
        moves=tuple((role, m.to_wire()) for role, m in state.move_log),
        found=o["found"], accepted=o["accepted"], win=o["win"],
        payoffs=pay.by_role, rng_draws=rng.draws)


def _count_range(kind: str, spec: dict, config_dict: dict, seed: int,
                 lo: int, hi: int) -> tuple[int, int, int]:
    config = GameConfig.from_dict(config_dict)
    profile = build_profile(kind, config, **spec)
    rng = RandomStream(seed, lo)
    n_accepted = n_wins = 0
    for trial in range(lo, hi):
        rng.reset_trial(trial)
        outcome = games.outcome(_terminal_state(kind, profile, config, rng))
        n_accepted += outcome["accepted"]
        n_wins += outcome["win"] and outcome["accepted"]
    return hi - lo, n_accepted, n_wins


def run_trials(kind: str, profile: StrategyProfile, config: GameConfig,
               n: int, seed: int, workers: int = 1,
               record_sink: Optional[Callable[[TrialRecord], None]] = None
               ) -> RunReport:
    """n independent trials; deterministic counters for fixed inputs.

    ``workers`` > 1 splits the trial range over processes; the per-trial
    keying makes the aggregate identical to a sequential run.  A
    ``record_sink`` (sequential mode only) receives every TrialRecord.
    """
    if n < 1:
        raise ValueError("need at least one trial")
    t0 = time.perf_counter()
    if workers > 1 and record_sink is not None:
        raise ValueError("record_sink requires sequential execution")
    if workers > 1 and not profile.spec:
        raise ValueError("parallel execution needs a rebuildable profile spec")
    n_accepted = n_wins = 0
    if workers <= 1:
        rng = RandomStream(seed, 0)
        if record_sink is None:
            for trial in range(n):
                rng.reset_trial(trial)
                outcome = games.outcome(
                    _terminal_state(kind, profile, config, rng))
                n_accepted += outcome["accepted"]
                n_wins += outcome["win"] and outcome["accepted"]
        else:
            for trial in range(n):
                rng.reset_trial(trial)
                record = play_trial(kind, profile, config, rng)
                n_accepted += record.accepted is True
                n_wins += record.win and record.accepted is True
                record_sink(record)
    else:
        chunk = (n + workers - 1) // workers
        ranges = [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_count_range, kind, profile.spec,
                                   config.to_dict(), seed, lo, hi)
                       for lo, hi in ranges]
            for future in futures:
                _, acc, wins = future.result()
                n_accepted += acc
                n_wins += wins
    wall_ms = (time.perf_counter() - t0) * 1000.0
    no_accepted = n_accepted == 0
    return RunReport(
        game=kind,
        config_hash=config_hash(kind, config, profile.spec),
        profile=profile.description,
        n_trials=n,
        n_accepted=n_accepted,
        n_wins_accepted=n_wins,
        accept_rate=n_accepted / n,
        conditional_win_rate=0.0 if no_accepted else n_wins / n_accepted,
        wilson95=wilson95(n_wins, n_accepted),
        seed=seed,
        no_accepted_trials=no_accepted,
        wall_time_ms=wall_ms)


def emit_report(report: RunReport, fmt: str, path) -> None:
    """Write a report as schema-stable JSON or CSV."""
    data = report.to_dict()
    if fmt == "json":
        with open(path, "w") as fh:
            json.dump(data, fh, indent=2, sort_keys=False)
            fh.write("\n")
    elif fmt == "csv":
        columns = []
        values = []
        for name in RunReport.FIELDS:
            if name == "wilson95":
                columns += ["wilson95_lo", "wilson95_hi"]
                values += [data["wilson95"][0], data["wilson95"][1]]
            else:
                columns.append(name)
                values.append(data[name])
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            writer.writerow(values)
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def read_report(path) -> RunReport:
    with open(path) as fh:
        return RunReport.from_dict(json.load(fh))
