"""The BB84 eavesdropping game.

Team 1 runs the BB84 protocol over an ideal fiber: the sender transmits
``n`` photons with uniformly random bits and bases, the receiver measures
each in a uniformly random basis.  Team 2 (Eve) sits on the fiber and per
photon either passes it through or intercept-resends it in a basis of her
choice.  After transmission the bases are announced, matching positions
are sifted, and ``k`` of them are sacrificed as publicly compared check
bits.  Team 1 then declares the fiber clean or tapped: it gains points
for catching a real tap and loses points for a false alarm.  Eve scores
the key bits she guessed right.

Intercept-resend in a mismatched basis randomizes the photon, so each
checked bit betrays Eve with probability 1/4; full interception is
caught with probability 1 - (3/4)^k.

Photon physics is resolved in one vectorized step once the last photon
has passed Eve, which is exactly equivalent to per-photon resolution
because nothing she could observe mid-stream may influence her moves
(her view exposes outcomes only after transmission).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import repeat
from typing import Optional

import numpy as np

from ..rng import RandomStream
from .base import (BB84, TEAM1_RECEIVER, TEAM1_SENDER, TEAM2_EVE, GameConfig,
                   GameState, IllegalMove, Move, NotTerminal, OutOfTurn,
                   PayoffResult, UnknownRole)

ROLES = (TEAM1_SENDER, TEAM1_RECEIVER, TEAM2_EVE)

RECT = "rect"   # computational basis (+)
DIAG = "diag"   # rotated basis (x)
_BASIS_CODE = {RECT: 0, DIAG: 1}
_BASIS_NAME = {0: RECT, 1: DIAG}

_PASS = 0  # action codes: 0 pass, 1 intercept rect, 2 intercept diag


@dataclass(frozen=True, slots=True)
class PassPhoton(Move):
    name = "pass"


@dataclass(frozen=True, slots=True)
class InterceptResend(Move):
    basis: str  # "rect" | "diag"
    name = "intercept_resend"

    def to_wire(self):
        return {"move": self.name, "basis": self.basis}


@dataclass(frozen=True, slots=True)
class DeclareEavesdropping(Move):
    name = "declare_eavesdropping"


@dataclass(frozen=True, slots=True)
class DeclareClean(Move):
    name = "declare_clean"


# Per-photon moves carry no trial state; share the three instances.
PASS_PHOTON = PassPhoton()
INTERCEPT_RECT = InterceptResend(RECT)
INTERCEPT_DIAG = InterceptResend(DIAG)

# Keyed by identity: these singletons live for the process, and identity
# lookups skip the generated dataclass __hash__ on the batched hot path.
_CODE_BY_ID = {id(PASS_PHOTON): 0, id(INTERCEPT_RECT): 1, id(INTERCEPT_DIAG): 2}


@dataclass(frozen=True, slots=True, kw_only=True)
class Bb84State(GameState):
    send_bits: np.ndarray      # uint8, pre-drawn protocol randomness
    send_bases: np.ndarray
    recv_bases: np.ndarray
    eve_actions: tuple         # per-photon action codes, grows as Eve moves
    recv_bits: Optional[np.ndarray]
    eve_bits: Optional[np.ndarray]   # Eve's outcomes on intercepted photons
    sift_idx: Optional[np.ndarray]
    check_idx: Optional[np.ndarray]
    check_errors: Optional[int]
    eve_touched: Optional[bool]      # any interception, known after transmit
    declared: Optional[str]    # "eavesdropping" | "clean"


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def new(config: GameConfig, rng: RandomStream) -> Bb84State:
    n = config.bb84_n_photons
    return Bb84State(
        kind=BB84, stage=0, to_move=TEAM2_EVE, terminal=False, move_log=(),
        config=config,
        send_bits=_frozen(rng.bit_array(n)),
        send_bases=_frozen(rng.bit_array(n)),
        recv_bases=_frozen(rng.bit_array(n)),
        eve_actions=(), recv_bits=None, eve_bits=None, sift_idx=None,
        check_idx=None, check_errors=None, eve_touched=None, declared=None)


def legal_moves(s: Bb84State, role: str):
    if role not in ROLES:
        raise UnknownRole(role)
    if s.terminal or role != s.to_move:
        return ()
    if role == TEAM2_EVE:
        return (PASS_PHOTON, INTERCEPT_RECT, INTERCEPT_DIAG)
    return (DeclareEavesdropping(), DeclareClean())


def _action_code(m: Move) -> int:
    kind = type(m)
    if kind is PassPhoton:
        return _PASS
    if kind is InterceptResend:
        try:
            return 1 + _BASIS_CODE[m.basis]
        except KeyError:
            raise IllegalMove(f"unknown basis {m.basis!r}")
    raise IllegalMove(f"{type(m).__name__} is not a per-photon move")


def _transmit(s: Bb84State, rng: RandomStream) -> Bb84State:
    """Resolve all photon measurements once Eve has acted on every photon."""
    n = s.config.bb84_n_photons
    actions = np.array(s.eve_actions, dtype=np.uint8)
    intercept = actions > 0
    eve_bases = (actions == 2).view(np.uint8)
    eve_match = eve_bases == s.send_bases
    eve_raw = rng.bit_array(n)
    eve_bits = np.where(eve_match, s.send_bits, eve_raw)
    resend_bases = np.where(intercept, eve_bases, s.send_bases)
    resend_bits = np.where(intercept, eve_bits, s.send_bits)
    bob_match = s.recv_bases == resend_bases
    bob_raw = rng.bit_array(n)
    recv_bits = np.where(bob_match, resend_bits, bob_raw)

    sift = np.nonzero(s.recv_bases == s.send_bases)[0]
    k = min(s.config.bb84_check_bits, len(sift))
    order = np.argsort(rng.random_array(len(sift)), kind="stable")
    check = np.sort(sift[order[:k]])
    errors = int(np.count_nonzero(s.send_bits[check] != recv_bits[check]))
    return s.evolved(
        stage=n, to_move=TEAM1_RECEIVER,
        recv_bits=_frozen(recv_bits), eve_bits=_frozen(eve_bits),
        sift_idx=_frozen(sift), check_idx=_frozen(check), check_errors=errors,
        eve_touched=bool(intercept.any()))


def apply(s: Bb84State, role: str, m: Move, rng: RandomStream) -> Bb84State:
    if role not in ROLES:
        raise UnknownRole(role)
    if s.terminal:
        raise IllegalMove("game is over")
    if role != s.to_move:
        raise OutOfTurn(f"it is {s.to_move}'s turn, not {role}'s")
    n = s.config.bb84_n_photons
    if s.stage < n:
        code = _action_code(m)
        out = s.evolved(stage=s.stage + 1, move_log=s.move_log + ((role, m),),
                      eve_actions=s.eve_actions + (code,))
        if out.stage == n:
            out = _transmit(out, rng)
        return out
    if isinstance(m, DeclareEavesdropping):
        declared = "eavesdropping"
    elif isinstance(m, DeclareClean):
        declared = "clean"
    else:
        raise IllegalMove(f"{type(m).__name__} is not a declaration")
    return s.evolved(stage=n + 1, to_move=None, terminal=True,
                   move_log=s.move_log + ((role, m),), declared=declared)


def apply_many(s: Bb84State, role: str, moves, rng: RandomStream) -> Bb84State:
    """Apply a run of per-photon moves in one step.

    Bit-identical to folding :func:`apply` over ``moves`` (all randomness
    is drawn at transmission time), but without per-photon state churn.
    """
    if role != TEAM2_EVE or s.stage >= s.config.bb84_n_photons:
        # Fall back to one-at-a-time semantics for everything else.
        for m in moves:
            s = apply(s, role, m, rng)
        return s
    if s.terminal:
        raise IllegalMove("game is over")
    if role != s.to_move:
        raise OutOfTurn(f"it is {s.to_move}'s turn, not {role}'s")
    n = s.config.bb84_n_photons
    moves = tuple(moves)
    if s.stage + len(moves) > n:
        raise IllegalMove(f"{len(moves)} photon moves but only "
                          f"{n - s.stage} photons remain")
    by_id = _CODE_BY_ID
    codes = tuple(by_id.get(id(m)) if id(m) in by_id else _action_code(m)
                  for m in moves)
    out = s.evolved(stage=s.stage + len(moves),
                    move_log=s.move_log + tuple(zip(repeat(role), moves)),
                    eve_actions=s.eve_actions + codes)
    if out.stage == n:
        out = _transmit(out, rng)
    return out


def _touched(s: Bb84State) -> bool:
    if s.eve_touched is not None:
        return s.eve_touched
    return any(code != _PASS for code in s.eve_actions)


def slim_view(s: Bb84State, role: str) -> dict:
    """Decision-relevant subset of :func:`view`."""
    if role not in ROLES:
        raise UnknownRole(role)
    n = s.config.bb84_n_photons
    out = {"stage": s.stage, "to_move": s.to_move, "terminal": s.terminal,
           "you": role, "n_photons": n, "photon_index": min(s.stage, n)}
    if s.stage >= n:
        out["announced"] = {
            "check_errors": int(s.check_errors),
            "check_bits_compared": len(s.check_idx),
        }
    return out


def view(s: Bb84State, role: str) -> dict:
    if role not in ROLES:
        raise UnknownRole(role)
    n = s.config.bb84_n_photons
    transmitted = s.stage >= n
    out = {
        "game": s.kind,
        "stage": s.stage,
        "to_move": s.to_move,
        "terminal": s.terminal,
        "you": role,
        "n_photons": n,
        "photon_index": min(s.stage, n),
        "legal_moves": [m.to_wire() for m in legal_moves(s, role)],
    }
    if transmitted:
        # Bases and check positions are announced publicly after transmission.
        out["announced"] = {
            "send_bases": [_BASIS_NAME[int(b)] for b in s.send_bases],
            "recv_bases": [_BASIS_NAME[int(b)] for b in s.recv_bases],
            "sift_idx": [int(i) for i in s.sift_idx],
            "check_idx": [int(i) for i in s.check_idx],
            "check_errors": int(s.check_errors),
            "check_bits_compared": len(s.check_idx),
        }
    if role == TEAM2_EVE:
        out["your_actions"] = [int(c) for c in s.eve_actions]
        if transmitted:
            out["your_outcomes"] = [
                int(b) if code != _PASS else None
                for b, code in zip(s.eve_bits, s.eve_actions)]
    elif role == TEAM1_SENDER:
        out["your_bits"] = [int(b) for b in s.send_bits]
        out["your_bases"] = [_BASIS_NAME[int(b)] for b in s.send_bases]
    else:  # receiver
        out["your_bases"] = [_BASIS_NAME[int(b)] for b in s.recv_bases]
        if transmitted:
            out["your_bits"] = [int(b) for b in s.recv_bits]
    if s.terminal:
        out["result"] = {"declared": s.declared,
                         "eve_touched": _touched(s),
                         "win": (s.declared == "eavesdropping") == _touched(s)}
    return out


def payoff(s: Bb84State) -> PayoffResult:
    if not s.terminal:
        raise NotTerminal("BB84 round still in progress")
    table = s.config.payoffs
    touched = _touched(s)
    team1 = 0.0
    eve = 0.0
    if s.declared == "eavesdropping":
        # Declared taps abort the transmission, so Eve has nothing to guess.
        team1 = table.catch_reward if touched else -table.false_alarm_penalty
    else:
        key_idx = np.setdiff1d(s.sift_idx, s.check_idx, assume_unique=True)
        actions = np.asarray(s.eve_actions, dtype=np.uint8)
        hits = ((actions[key_idx] != _PASS)
                & (s.eve_bits[key_idx] == s.send_bits[key_idx]))
        eve = table.eve_correct_bit_reward * int(np.count_nonzero(hits))
    return PayoffResult({TEAM1_SENDER: team1, TEAM1_RECEIVER: team1,
                         TEAM2_EVE: eve})


def outcome(s: Bb84State) -> dict:
    win = (s.declared == "eavesdropping") == _touched(s)
    return {"accepted": True, "win": win, "found": None}


MOVE_PARSERS = {
    "pass": lambda w: PassPhoton(),
    "intercept_resend": lambda w: InterceptResend(str(w["basis"])),
    "declare_eavesdropping": lambda w: DeclareEavesdropping(),
    "declare_clean": lambda w: DeclareClean(),
}
