"""Shared test helpers: oracles and tiny runners.

The density-matrix computations here are the independent oracle for the
trajectory-sampled channels; they are hand-derived formulas, not calls
back into the code under test.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from qgames import GameConfig, RandomStream
from qgames import games
from qgames.games.base import BB84, TEAM2_EVE


# ---------------------------------------------------------------------------
# random linear-algebra material
# ---------------------------------------------------------------------------

def random_state_amps(np_rng, dim: int) -> np.ndarray:
    vec = np_rng.normal(size=dim) + 1j * np_rng.normal(size=dim)
    return vec / np.linalg.norm(vec)


def random_unitary_matrix(np_rng, dim: int) -> np.ndarray:
    z = np_rng.normal(size=(dim, dim)) + 1j * np_rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    # Fix the phase ambiguity so the distribution is Haar.
    return q * (np.diag(r) / np.abs(np.diag(r)))


def labels(dim: int) -> tuple[str, ...]:
    return tuple(f"e{i}" for i in range(dim))


# ---------------------------------------------------------------------------
# density-matrix oracle (tests only)
# ---------------------------------------------------------------------------

def rho_of(amps: np.ndarray) -> np.ndarray:
    return np.outer(amps, amps.conj())


def dephase_exact(rho: np.ndarray, p: float) -> np.ndarray:
    """Exact dephasing action: keep 1-p of everything, p of the diagonal."""
    return (1.0 - p) * rho + p * np.diag(np.diag(rho))


def disturb_exact(rho: np.ndarray, delta: float, d_index: int) -> np.ndarray:
    """Exact leak action: mix toward the flagged basis state."""
    dim = rho.shape[0]
    leak = np.zeros((dim, dim), dtype=complex)
    leak[d_index, d_index] = 1.0
    return (1.0 - delta) * rho + delta * leak


def born_head_prob(rho: np.ndarray, index: int = 0) -> float:
    return float(rho[index, index].real)


# ---------------------------------------------------------------------------
# trial runner (mirrors the harness loop, kept local so game tests do not
# depend on the harness module)
# ---------------------------------------------------------------------------

def play_trial(kind: str, profile, config: GameConfig, rng: RandomStream):
    state = games.new_game(kind, config, rng)
    profile.begin_trial(rng)
    if kind == BB84:
        eve = profile.policies.get(TEAM2_EVE)
        if eve is not None and hasattr(eve, "plan"):
            state = games.apply_moves(
                state, TEAM2_EVE, eve.plan(config.bb84_n_photons, rng), rng)
    while not state.terminal:
        role = state.to_move
        move = profile.policies[role].choose(games.policy_view(state, role), rng)
        state = games.apply_move(state, role, move, rng)
    return state


def four_sigma(p: float, n: int) -> float:
    return 4.0 * math.sqrt(p * (1.0 - p) / n)


# ---------------------------------------------------------------------------
# structural view inspection
# ---------------------------------------------------------------------------

FORBIDDEN_KEYS = {"amps", "amplitudes", "quantum_state", "coin", "state_vector",
                  "matrix", "wavefunction"}


def walk(value, path=()):
    if isinstance(value, dict):
        for k, v in value.items():
            yield from walk(v, path + (k,))
    elif isinstance(value, (list, tuple)):
        for i, v in enumerate(value):
            yield from walk(v, path + (i,))
    else:
        yield path, value


def assert_no_hidden_quantum_data(view: dict, allow_own_moves: bool = False):
    """Structural leak check: no complex numbers, arrays, or state fields.

    ``allow_own_moves`` skips the role's own move payloads (a player may
    of course see the amplitudes it chose itself).
    """
    for path, value in walk(view):
        if allow_own_moves and path and path[0] == "your_moves":
            continue
        assert not isinstance(value, complex), f"complex leak at {path}"
        assert not isinstance(value, np.ndarray), f"array leak at {path}"
        for key in path:
            if isinstance(key, str):
                assert key not in FORBIDDEN_KEYS, f"forbidden field {key} at {path}"


@pytest.fixture
def config() -> GameConfig:
    return GameConfig()
