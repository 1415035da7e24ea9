"""Shared game-engine types: configs, payoffs, state base, move protocol.

Games are immutable state machines.  ``apply_move`` returns a new state;
``view`` projects the state down to what one role may legally see.  The
uniform entry points live in ``qgames.games``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields, asdict
from typing import Any, Optional

THREE_BOX = "three-box"
MEYER = "meyer-coin"
GHZ = "ghz"
BB84 = "bb84-eaves"

GAME_KINDS = (THREE_BOX, MEYER, GHZ, BB84)

ALICE = "alice"
BOB = "bob"
TRUSTED_PARTY = "trusted_party"
REFEREE = "referee"
PLAYER1 = "player1"
PLAYER2 = "player2"
PLAYER3 = "player3"
TEAM1_SENDER = "team1_sender"
TEAM1_RECEIVER = "team1_receiver"
TEAM2_EVE = "team2_eve"


class GameError(Exception):
    """Base for rule violations."""


class IllegalMove(GameError):
    """Move payload is malformed or not allowed by the rules."""


class OutOfTurn(IllegalMove):
    """Legal-looking move posted by a role whose turn it is not."""


class UnknownRole(GameError):
    pass


class NotTerminal(GameError):
    """Payoff requested before the game ended."""


@dataclass(frozen=True, slots=True)
class PayoffTable:
    """Score parameters.  Magnitudes are declared config, not physics."""

    cheat_caught_penalty: float = -10.0
    catch_reward: float = 1.0
    false_alarm_penalty: float = 1.0
    eve_correct_bit_reward: float = 1.0

    def __post_init__(self):
        if self.false_alarm_penalty <= 0:
            raise ValueError("false_alarm_penalty must be positive (it is subtracted)")


@dataclass(frozen=True, slots=True)
class GameConfig:
    """Knobs shared by all four games; each game reads what it needs.

    Defaults model the canonical setting: a fully classical Bob
    (dephasing_p=1), a careful Bob (disturbance_delta=0), and an
    anti-cheat inspection rate of 0.1 for policies that use it.
    """

    dephasing_p: float = 1.0
    disturbance_delta: float = 0.0
    inspect_prob: float = 0.1
    bb84_n_photons: int = 64
    bb84_check_bits: int = 16
    bb84_error_threshold: float = 0.0
    payoffs: PayoffTable = field(default_factory=PayoffTable)

    def __post_init__(self):
        for name in ("dephasing_p", "disturbance_delta", "inspect_prob",
                     "bb84_error_threshold"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0,1], got {v}")
        if not self.bb84_n_photons >= self.bb84_check_bits >= 0:
            raise ValueError(
                f"need n_photons >= check_bits >= 0, got "
                f"{self.bb84_n_photons} and {self.bb84_check_bits}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "GameConfig":
        data = dict(data)
        payoffs = data.pop("payoffs", None)
        if isinstance(payoffs, dict):
            data["payoffs"] = PayoffTable(**payoffs)
        elif isinstance(payoffs, PayoffTable):
            data["payoffs"] = payoffs
        return cls(**data)


@dataclass(frozen=True, slots=True)
class PayoffResult:
    """Terminal scores per role plus the conditional-statistic marker.

    ``excluded_from_conditional`` is True for trials that do not count
    toward the conditional win rate (canceled / cheat-terminated ones).
    """

    by_role: dict[str, float]
    excluded_from_conditional: bool = False


_STATE_COPIERS: dict[type, tuple] = {}


def _compile_copier(cls):
    # One generated copier per state class: straight-line field copies are
    # about twice as fast as a getattr loop, and Monte Carlo runs make
    # millions of state transitions.
    names = tuple(f.name for f in fields(cls))
    lines = ["def _copy(src, new, sa):"]
    lines += [f"    sa(new, {n!r}, src.{n})" for n in names]
    namespace: dict = {}
    exec("\n".join(lines), namespace)
    entry = (namespace["_copy"], frozenset(names))
    _STATE_COPIERS[cls] = entry
    return entry


@dataclass(frozen=True, slots=True, kw_only=True)
class GameState:
    """Common head of every game state; games subclass and add fields."""

    kind: str
    stage: int
    to_move: Optional[str]
    terminal: bool
    move_log: tuple  # ((role, Move), ...)
    config: GameConfig

    def evolved(self, **changes) -> "GameState":
        """Copy with updated fields; dataclasses.replace minus its overhead."""
        cls = type(self)
        entry = _STATE_COPIERS.get(cls)
        if entry is None:
            entry = _compile_copier(cls)
        copier, known = entry
        new = object.__new__(cls)
        setter = object.__setattr__
        copier(self, new, setter)
        for name, value in changes.items():
            if name not in known:
                raise TypeError(f"{cls.__name__} has no field {name!r}")
            setter(new, name, value)
        return new


class Move:
    """Marker base; concrete moves are small frozen dataclasses.

    Every move serializes to a wire dict whose ``move`` field is a
    stable string name; services and clients speak only these dicts.
    """

    name: str = "?"

    def to_wire(self) -> dict[str, Any]:
        return {"move": self.name}


def wire_move_log(log: tuple) -> list[dict]:
    return [{"role": role, **move.to_wire()} for role, move in log]
