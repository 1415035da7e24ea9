"""Meyer's coin-flip game.

A coin starts heads up.  Alice moves, then Bob, then Alice again; each
move is flip / don't flip, and nobody looks at the coin.  Alice wins if
the coin ends heads up.  A quantum Alice may replace her flips with any
2x2 unitary; classical Bob's handling of the coin dephases it with
probability ``dephasing_p`` right after his move, which is what kills
the famous always-win trick for any p > 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from ..channels import DephasingChannel, dephase
from ..hilbert import (HilbertError, StateVector, UnitaryOp, apply as apply_u,
                       basis_state, label_projector, make_unitary, measure)
from ..rng import RandomStream
from .base import (ALICE, BOB, MEYER, GameConfig, GameState, IllegalMove, Move,
                   NotTerminal, OutOfTurn, PayoffResult, UnknownRole,
                   wire_move_log)

ROLES = (ALICE, BOB)
BASIS = ("head", "tail")

FLIP_MATRIX = np.array([[0, 1], [1, 0]], dtype=complex)
IDENTITY_MATRIX = np.eye(2, dtype=complex)
_H = 1.0 / math.sqrt(2.0)
SPREAD_MATRIX = np.array([[_H, _H], [_H, -_H]], dtype=complex)  # its own inverse


@dataclass(frozen=True, slots=True)
class Flip(Move):
    name = "flip"


@dataclass(frozen=True, slots=True)
class NoFlip(Move):
    name = "no_flip"


@dataclass(frozen=True, slots=True)
class Unitary(Move):
    matrix: tuple  # 2x2 rows of complex entries
    name = "unitary"

    def to_wire(self):
        return {"move": self.name,
                "matrix": [[[complex(z).real, complex(z).imag] for z in row]
                           for row in self.matrix]}


@dataclass(frozen=True, slots=True)
class MoveFamily(Move):
    family: str

    @property
    def name(self):
        return self.family

    def to_wire(self):
        return {"move": self.family, "parameterized": True}


@dataclass(frozen=True, slots=True, kw_only=True)
class MeyerState(GameState):
    coin: StateVector
    final_coin: Optional[str]  # "head" | "tail" at terminal


def new(config: GameConfig, rng: RandomStream) -> MeyerState:
    return MeyerState(kind=MEYER, stage=0, to_move=ALICE, terminal=False,
                      move_log=(), config=config, coin=_HEADS_UP,
                      final_coin=None)


def legal_moves(s: MeyerState, role: str):
    if role not in ROLES:
        raise UnknownRole(role)
    if s.terminal or role != s.to_move:
        return ()
    if role == BOB:
        return (Flip(), NoFlip())
    return (Flip(), NoFlip(), MoveFamily("unitary"))


_FLIP_OP = make_unitary(FLIP_MATRIX)
_NO_FLIP_OP = make_unitary(IDENTITY_MATRIX)
_P_HEAD = label_projector(BASIS, "head")
_HEADS_UP = basis_state(BASIS, "head")

# Identity-keyed memo for Unitary moves.  Policies replay one move object
# across millions of trials; holding a strong reference to the key keeps
# its id from being reused, and the `is` check guards entries that
# survive a clear.
_OP_MEMO: dict[int, tuple] = {}


@lru_cache(maxsize=256)
def _cached_unitary(rows: tuple) -> UnitaryOp:
    return make_unitary([[complex(z) for z in row] for row in rows])


def _as_unitary(m: Move) -> UnitaryOp:
    if isinstance(m, Flip):
        return _FLIP_OP
    if isinstance(m, NoFlip):
        return _NO_FLIP_OP
    if isinstance(m, Unitary):
        hit = _OP_MEMO.get(id(m))
        if hit is not None and hit[0] is m:
            return hit[1]
        try:
            op = _cached_unitary(tuple(tuple(row) for row in m.matrix))
        except HilbertError as exc:
            raise IllegalMove(f"bad unitary payload: {exc}") from exc
        if len(_OP_MEMO) > 128:
            _OP_MEMO.clear()
        _OP_MEMO[id(m)] = (m, op)
        return op
    raise IllegalMove(f"{type(m).__name__} is not a coin move")


def apply(s: MeyerState, role: str, m: Move, rng: RandomStream) -> MeyerState:
    if role not in ROLES:
        raise UnknownRole(role)
    if s.terminal:
        raise IllegalMove("game is over")
    if role != s.to_move:
        raise OutOfTurn(f"it is {s.to_move}'s turn, not {role}'s")
    if role == BOB and isinstance(m, Unitary):
        raise IllegalMove("Bob plays with his hands: flip or no_flip only")
    coin = apply_u(_as_unitary(m), s.coin)
    log = s.move_log + ((role, m),)
    if s.stage == 0:
        return s.evolved(stage=1, to_move=BOB, move_log=log, coin=coin)
    if s.stage == 1:
        # Bob handled a quantum object with classical hands.
        coin = dephase(DephasingChannel(s.config.dephasing_p), coin, rng)
        return s.evolved(stage=2, to_move=ALICE, move_log=log, coin=coin)
    # Alice's last move; the coin is then read out.
    result = measure(_P_HEAD, coin, rng)
    final = "head" if result.found else "tail"
    return s.evolved(stage=3, to_move=None, terminal=True, move_log=log,
                   coin=result.post_state, final_coin=final)


def slim_view(s: MeyerState, role: str) -> dict:
    """Decision-relevant subset of :func:`view`."""
    if role not in ROLES:
        raise UnknownRole(role)
    return {"stage": s.stage, "to_move": s.to_move, "terminal": s.terminal,
            "you": role}


def view(s: MeyerState, role: str) -> dict:
    if role not in ROLES:
        raise UnknownRole(role)
    out = {
        "game": s.kind,
        "stage": s.stage,
        "to_move": s.to_move,
        "terminal": s.terminal,
        "you": role,
        "legal_moves": [m.to_wire() for m in legal_moves(s, role)],
        "your_moves": wire_move_log(
            tuple(e for e in s.move_log if e[0] == role)),
    }
    if s.terminal:
        out["result"] = {"final_coin": s.final_coin,
                         "win": s.final_coin == "head"}
    return out


def payoff(s: MeyerState) -> PayoffResult:
    if not s.terminal:
        raise NotTerminal("coin game still in progress")
    alice = 1.0 if s.final_coin == "head" else 0.0
    return PayoffResult({ALICE: alice, BOB: 1.0 - alice})


def outcome(s: MeyerState) -> dict:
    win = s.final_coin == "head"
    return {"accepted": True, "win": win, "found": None}


MOVE_PARSERS = {
    "flip": lambda w: Flip(),
    "no_flip": lambda w: NoFlip(),
    "unitary": lambda w: Unitary(
        tuple(tuple(complex(re, im) for re, im in row) for row in w["matrix"])),
}
