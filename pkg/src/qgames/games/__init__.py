"""Uniform interface over the four game state machines.

Games are addressed by stable string names: "three-box", "meyer-coin",
"ghz", "bb84-eaves".  All state is immutable; all randomness flows
through the caller's RandomStream.
"""
from __future__ import annotations

from ..rng import RandomStream
from . import bb84, ghz, meyer, three_box
from .base import (BB84, GAME_KINDS, GHZ, MEYER, THREE_BOX, GameConfig,
                   GameError, GameState, IllegalMove, Move, NotTerminal,
                   OutOfTurn, PayoffResult, PayoffTable, UnknownRole,
                   wire_move_log)

_MODULES = {
    THREE_BOX: three_box,
    MEYER: meyer,
    GHZ: ghz,
    BB84: bb84,
}


def _module(kind: str):
    try:
        return _MODULES[kind]
    except KeyError:
        raise GameError(f"unknown game kind {kind!r}; know {sorted(_MODULES)}")


def roles(kind: str) -> tuple[str, ...]:
    return _module(kind).ROLES


def module_for(kind: str):
    """The game's implementing module, for dispatch-free hot loops."""
    return _module(kind)


def new_game(kind: str, config: GameConfig, rng: RandomStream) -> GameState:
    return _module(kind).new(config, rng)


def legal_moves(state: GameState, role: str):
    return _module(state.kind).legal_moves(state, role)


def apply_move(state: GameState, role: str, move: Move,
               rng: RandomStream) -> GameState:
    return _module(state.kind).apply(state, role, move, rng)


def apply_moves(state: GameState, role: str, moves,
                rng: RandomStream) -> GameState:
    """Apply a sequence of moves by one role; games may batch internally."""
    mod = _module(state.kind)
    if hasattr(mod, "apply_many"):
        return mod.apply_many(state, role, moves, rng)
    for move in moves:
        state = mod.apply(state, role, move, rng)
    return state


def view(state: GameState, role: str) -> dict:
    return _module(state.kind).view(state, role)


def policy_view(state: GameState, role: str) -> dict:
    """Slim, cheap-to-build subset of ``view`` for engine policies.

    Information-feasibility contract: every (path, value) pair here also
    appears in the full role view; tests enforce the containment.
    """
    return _module(state.kind).slim_view(state, role)


def payoff(state: GameState) -> PayoffResult:
    return _module(state.kind).payoff(state)


def outcome(state: GameState) -> dict:
    """Per-trial counters for reports: accepted / win / found flags."""
    return _module(state.kind).outcome(state)


def parse_move(kind: str, wire: dict) -> Move:
    """Decode a wire-format move dict into the game's move object."""
    parsers = _module(kind).MOVE_PARSERS
    try:
        name = wire["move"]
    except (TypeError, KeyError):
        raise IllegalMove(f"move payload must be a dict with a 'move' field, "
                          f"got {wire!r}")
    if name not in parsers:
        raise IllegalMove(f"unknown move {name!r} for {kind}")
    try:
        return parsers[name](wire)
    except IllegalMove:
        raise
    except Exception as exc:
        raise IllegalMove(f"malformed {name!r} payload: {exc}") from exc
