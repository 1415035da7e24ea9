"""The three-box game.

Three stages, moves made privately.  Alice prepares a single particle in
boxes A/B or anywhere else (quantum Alice uses a third box C); Bob opens
box A or box B — or occasionally inspects both to catch a two-particle
cheat; Alice then measures anything she likes and accepts or cancels the
trial.  She wins the accepted trials in which Bob found the particle.  A
trusted third party observes Bob's action and sees whether he found it.

The state space is spanned by A, B, C plus a flagged leak label D that
only the disturbance channel populates (careless Bob who found the
particle).  Opening one box never touches the amplitudes in the others.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from ..channels import DisturbanceChannel, disturb
from ..hilbert import (HilbertError, StateVector, basis_state, label_projector,
                       make_state, measure, rank1_projector)
from ..rng import RandomStream
from .base import (ALICE, BOB, THREE_BOX, TRUSTED_PARTY, GameConfig, GameState,
                   IllegalMove, Move, NotTerminal, OutOfTurn, PayoffResult,
                   UnknownRole, wire_move_log)

ROLES = (ALICE, BOB, TRUSTED_PARTY)
BASIS = ("A", "B", "C", "D")
GAME_BASIS = ("A", "B", "C")
ELSEWHERE = "elsewhere"

_SQRT3 = 1.0 / math.sqrt(3.0)
SUPERPOSITION_AMPS = (_SQRT3, _SQRT3, _SQRT3)           # the even three-box spread
POST_TARGET_AMPS = (_SQRT3, _SQRT3, -_SQRT3)            # Alice's closing target


@dataclass(frozen=True, slots=True)
class ClassicalPlace(Move):
    box: str  # "A" | "B" | "elsewhere"
    name = "classical_place"

    def to_wire(self):
        return {"move": self.name, "box": self.box}


@dataclass(frozen=True, slots=True)
class QuantumPrepare(Move):
    amps: tuple  # 3 complex amplitudes over (A, B, C)
    name = "quantum_prepare"

    def to_wire(self):
        return {"move": self.name,
                "amps": [[z.real, z.imag] for z in map(complex, self.amps)]}


@dataclass(frozen=True, slots=True)
class CheatTwoParticles(Move):
    name = "cheat_two_particles"


@dataclass(frozen=True, slots=True)
class Open(Move):
    box: str  # "A" | "B"
    name = "open"

    def to_wire(self):
        return {"move": self.name, "box": self.box}


@dataclass(frozen=True, slots=True)
class InspectBoth(Move):
    name = "inspect_both"


@dataclass(frozen=True, slots=True)
class MeasureOnto(Move):
    amps: tuple  # 3 or 4 complex amplitudes over (A, B, C[, D])
    name = "measure_onto"

    def to_wire(self):
        return {"move": self.name,
                "amps": [[z.real, z.imag] for z in map(complex, self.amps)]}


@dataclass(frozen=True, slots=True)
class Accept(Move):
    name = "accept"


@dataclass(frozen=True, slots=True)
class Cancel(Move):
    name = "cancel"


@dataclass(frozen=True, slots=True)
class MoveFamily(Move):
    """Placeholder for a parameterized family in legal-move listings."""

    family: str

    @property
    def name(self):
        return self.family

    def to_wire(self):
        return {"move": self.family, "parameterized": True}


@dataclass(frozen=True, slots=True, kw_only=True)
class ThreeBoxState(GameState):
    quantum_state: Optional[StateVector]
    prep: Optional[str]            # None | "classical" | "quantum" | "cheat"
    found: Optional[bool]          # set by Bob's observed measurement
    caught_cheating: bool
    accepted: Optional[bool]
    alice_found: Optional[bool]    # Alice's own closing-measurement outcome
    disturbed: bool                # leak branch taken (trusted-party log only)


def new(config: GameConfig, rng: RandomStream) -> ThreeBoxState:
    return ThreeBoxState(
        kind=THREE_BOX, stage=0, to_move=ALICE, terminal=False, move_log=(),
        config=config, quantum_state=None, prep=None, found=None,
        caught_cheating=False, accepted=None, alice_found=None, disturbed=False)


@lru_cache(maxsize=256)
def _embed(amps: tuple) -> StateVector:
    """Lift a 3-amplitude game-basis vector into the 4-dim engine basis."""
    vec = [complex(a) for a in amps]
    if len(vec) == 3:
        vec = vec + [0j]
    if len(vec) != 4:
        raise IllegalMove(f"expected 3 or 4 amplitudes, got {len(vec)}")
    return make_state(BASIS, vec)


@lru_cache(maxsize=256)
def _rank1(amps: tuple):
    return rank1_projector(_embed(amps))


_P_BOX = {box: label_projector(BASIS, box) for box in ("A", "B")}
_PLACED = {label: basis_state(BASIS, label) for label in ("A", "B", "C")}


def legal_moves(s: ThreeBoxState, role: str):
    if role not in ROLES:
        raise UnknownRole(role)
    if s.terminal or role != s.to_move:
        return ()
    if s.stage == 0:
        return (ClassicalPlace("A"), ClassicalPlace("B"), ClassicalPlace(ELSEWHERE),
                MoveFamily("quantum_prepare"), CheatTwoParticles())
    if s.stage == 1:
        return (Open("A"), Open("B"), InspectBoth())
    if s.stage == 2:
        if s.prep == "cheat":
            return (Accept(), Cancel())
        return (MoveFamily("measure_onto"), Accept(), Cancel())
    return (Accept(), Cancel())


def _check_turn(s: ThreeBoxState, role: str):
    if role not in ROLES:
        raise UnknownRole(role)
    if s.terminal:
        raise IllegalMove("game is over")
    if role != s.to_move:
        raise OutOfTurn(f"it is {s.to_move}'s turn, not {role}'s")


def _maybe_disturb(s: ThreeBoxState, post, rng):
    """Careless-Bob leak on the found branch of a quantum preparation."""
    if s.prep == "quantum" and s.config.disturbance_delta > 0.0:
        channel = DisturbanceChannel(s.config.disturbance_delta)
        leaked = disturb(channel, post, rng)
        return leaked, leaked is not post
    return post, False


def _open_one(s: ThreeBoxState, log: tuple, box: str,
              rng: RandomStream) -> ThreeBoxState:
    if s.prep == "cheat":
        # One classical particle sits in each box; any opening finds one.
        return s.evolved(stage=2, to_move=ALICE, move_log=log, found=True)
    result = measure(_P_BOX[box], s.quantum_state, rng)
    post = result.post_state
    disturbed = False
    if result.found:
        post, disturbed = _maybe_disturb(s, post, rng)
    # The unopened boxes are untouched: the not-find branch passes through
    # exactly as the measurement produced it.
    return s.evolved(stage=2, to_move=ALICE, move_log=log, found=result.found,
                     quantum_state=post, disturbed=disturbed)


def _inspect(s: ThreeBoxState, log: tuple, rng: RandomStream) -> ThreeBoxState:
    if s.prep == "cheat":
        return s.evolved(stage=2, to_move=None, terminal=True, move_log=log,
                         caught_cheating=True)
    first = measure(_P_BOX["A"], s.quantum_state, rng)
    if first.found:
        found, post = True, first.post_state
    else:
        second = measure(_P_BOX["B"], first.post_state, rng)
        found, post = second.found, second.post_state
    disturbed = False
    if found:
        post, disturbed = _maybe_disturb(s, post, rng)
    return s.evolved(stage=2, to_move=ALICE, move_log=log, found=found,
                     quantum_state=post, disturbed=disturbed)


def apply(s: ThreeBoxState, role: str, m: Move, rng: RandomStream) -> ThreeBoxState:
    _check_turn(s, role)
    log = s.move_log + ((role, m),)
    if s.stage == 0:
        if isinstance(m, ClassicalPlace):
            if m.box not in ("A", "B", ELSEWHERE):
                raise IllegalMove(f"unknown placement {m.box!r}")
            label = "C" if m.box == ELSEWHERE else m.box
            return s.evolved(stage=1, to_move=BOB, move_log=log,
                           prep="classical", quantum_state=_PLACED[label])
        if isinstance(m, QuantumPrepare):
            try:
                state = _embed(tuple(m.amps))
            except HilbertError as exc:
                raise IllegalMove(f"bad preparation amplitudes: {exc}") from exc
            return s.evolved(stage=1, to_move=BOB, move_log=log,
                           prep="quantum", quantum_state=state)
        if isinstance(m, CheatTwoParticles):
            return s.evolved(stage=1, to_move=BOB, move_log=log, prep="cheat")
        raise IllegalMove(f"{type(m).__name__} is not a preparation move")

    if s.stage == 1:
        if isinstance(m, Open):
            if m.box not in ("A", "B"):
                raise IllegalMove(f"Bob may open A or B, not {m.box!r}")
            return _open_one(s, log, m.box, rng)
        if isinstance(m, InspectBoth):
            return _inspect(s, log, rng)
        raise IllegalMove(f"{type(m).__name__} is not a Bob move")

    if s.stage == 2 and isinstance(m, MeasureOnto):
        if s.prep == "cheat":
            raise IllegalMove("two classical particles admit no projective closing")
        try:
            projector = _rank1(tuple(m.amps))
        except HilbertError as exc:
            raise IllegalMove(f"bad measurement target: {exc}") from exc
        result = measure(projector, s.quantum_state, rng)
        return s.evolved(stage=3, move_log=log, alice_found=result.found,
                       quantum_state=result.post_state)

    if s.stage in (2, 3):
        if isinstance(m, Accept):
            return s.evolved(stage=s.stage + 1, to_move=None, terminal=True,
                           move_log=log, accepted=True)
        if isinstance(m, Cancel):
            return s.evolved(stage=s.stage + 1, to_move=None, terminal=True,
                           move_log=log, accepted=False)
        raise IllegalMove(f"{type(m).__name__} is not a closing move")

    raise IllegalMove(f"no move possible at stage {s.stage}")


def slim_view(s: ThreeBoxState, role: str) -> dict:
    """Decision-relevant subset of :func:`view`; same information boundary."""
    if role == ALICE:
        return {"stage": s.stage, "to_move": s.to_move, "terminal": s.terminal,
                "you": role, "alice_found": s.alice_found, "accepted": s.accepted}
    if role == BOB:
        return {"stage": s.stage, "to_move": s.to_move, "terminal": s.terminal,
                "you": role, "found": s.found}
    if role == TRUSTED_PARTY:
        return {"stage": s.stage, "to_move": s.to_move, "terminal": s.terminal,
                "you": role, "found": s.found, "accepted": s.accepted}
    raise UnknownRole(role)


def view(s: ThreeBoxState, role: str) -> dict:
    if role not in ROLES:
        raise UnknownRole(role)
    common = {
        "game": s.kind,
        "stage": s.stage,
        "to_move": s.to_move,
        "terminal": s.terminal,
        "you": role,
        "legal_moves": [m.to_wire() for m in legal_moves(s, role)],
    }
    if s.terminal:
        # Public close-out: the trusted party announces whether an accepted
        # trial was a win.  Canceled trials reveal nothing.
        common["result"] = {
            "accepted": s.accepted,
            "caught_cheating": s.caught_cheating,
            "win": bool(s.found) if s.accepted else None,
        }
    if role == ALICE:
        common["your_moves"] = wire_move_log(
            tuple(e for e in s.move_log if e[0] == ALICE))
        common["alice_found"] = s.alice_found
        common["accepted"] = s.accepted
        return common
    if role == BOB:
        common["your_moves"] = wire_move_log(
            tuple(e for e in s.move_log if e[0] == BOB))
        common["found"] = s.found          # his own measurement outcome
        common["caught_cheating"] = s.caught_cheating if s.move_log else False
        return common
    # Trusted party: observes Bob's action and its outcome, never Alice's
    # preparation.  The drawn disturbance branch shows up only here.
    common["bob_moves"] = wire_move_log(
        tuple(e for e in s.move_log if e[0] == BOB))
    common["found"] = s.found
    common["caught_cheating"] = s.caught_cheating
    common["disturbed"] = s.disturbed
    common["accepted"] = s.accepted
    return common


def payoff(s: ThreeBoxState) -> PayoffResult:
    if not s.terminal:
        raise NotTerminal("three-box trial still in progress")
    table = s.config.payoffs
    if s.caught_cheating:
        pen = table.cheat_caught_penalty
        return PayoffResult({ALICE: pen, BOB: -pen, TRUSTED_PARTY: 0.0},
                            excluded_from_conditional=True)
    if not s.accepted:
        return PayoffResult({ALICE: 0.0, BOB: 0.0, TRUSTED_PARTY: 0.0},
                            excluded_from_conditional=True)
    alice = 1.0 if s.found else 0.0
    return PayoffResult({ALICE: alice, BOB: 1.0 - alice, TRUSTED_PARTY: 0.0},
                        excluded_from_conditional=False)


def outcome(s: ThreeBoxState) -> dict:
    accepted = s.accepted is True
    return {
        "accepted": accepted,
        "win": bool(accepted and s.found),
        "found": s.found,
    }


MOVE_PARSERS = {
    "classical_place": lambda w: ClassicalPlace(str(w["box"])),
    "quantum_prepare": lambda w: QuantumPrepare(
        tuple(complex(re, im) for re, im in w["amps"])),
    "cheat_two_particles": lambda w: CheatTwoParticles(),
    "open": lambda w: Open(str(w["box"])),
    "inspect_both": lambda w: InspectBoth(),
    "measure_onto": lambda w: MeasureOnto(
        tuple(complex(re, im) for re, im in w["amps"])),
    "accept": lambda w: Accept(),
    "cancel": lambda w: Cancel(),
}
