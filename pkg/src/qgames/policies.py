"""Executable strategies: the move-choosing side of a strategy profile.

A policy sees exactly its role's view (the slim policy view during bulk
simulation) and the trial's RandomStream; nothing else.  Profiles bundle
one policy per playing role and are constructed from stable spec names
so they can be rebuilt in worker processes and hashed into reports.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .games import bb84, ghz, meyer, three_box
from .games.base import (ALICE, BB84, BOB, GHZ, MEYER, PLAYER1, PLAYER2,
                         PLAYER3, TEAM1_RECEIVER, TEAM2_EVE, THREE_BOX)
from .hilbert import (StateVector, UnitaryOp, make_state, make_unitary,
                      subset_projector)
from .rng import RandomStream


class Policy:
    """Base: stateless between trials unless begin_trial says otherwise."""

    def begin_trial(self, rng: RandomStream) -> None:
        pass

    def choose(self, view: dict, rng: RandomStream):
        raise NotImplementedError


# --------------------------------------------------------------------------
# three-box
# --------------------------------------------------------------------------

class ThreeBoxQuantumAlice(Policy):
    """Spread the particle over three boxes, close on the signed spread.

    Prepares (|A⟩+|B⟩+|C⟩)/sqrt(3), measures onto (|A⟩+|B⟩-|C⟩)/sqrt(3),
    and accepts exactly when the closing measurement finds the target.
    The overlap between the target and the leftover not-found state is
    zero, so accepted trials are all wins.
    """

    def __init__(self, prep_amps=None, target_amps=None):
        self.prep_amps = tuple(prep_amps) if prep_amps is not None \
            else three_box.SUPERPOSITION_AMPS
        self.target_amps = tuple(target_amps) if target_amps is not None \
            else three_box.POST_TARGET_AMPS
        self._prepare = three_box.QuantumPrepare(self.prep_amps)
        self._close = three_box.MeasureOnto(self.target_amps)

    def choose(self, view, rng):
        stage = view["stage"]
        if stage == 0:
            return self._prepare
        if stage == 2:
            return self._close
        return three_box.Accept() if view["alice_found"] else three_box.Cancel()


class ThreeBoxClassicalAlice(Policy):
    """Put the particle in one definite place and accept or cancel blindly."""

    def __init__(self, place: str = "A", decision: str = "accept"):
        if place not in ("A", "B", three_box.ELSEWHERE):
            raise ValueError(f"bad placement {place!r}")
        if decision not in ("accept", "cancel"):
            raise ValueError(f"bad decision {decision!r}")
        self.place = place
        self.decision = decision

    def choose(self, view, rng):
        if view["stage"] == 0:
            return three_box.ClassicalPlace(self.place)
        return three_box.Accept() if self.decision == "accept" \
            else three_box.Cancel()


class ThreeBoxClassicalAliceUniform(Policy):
    """Uniformly random placement, accept always."""

    def choose(self, view, rng):
        if view["stage"] == 0:
            place = ("A", "B", three_box.ELSEWHERE)[rng.index(3)]
            return three_box.ClassicalPlace(place)
        return three_box.Accept()


class ThreeBoxCheatAlice(Policy):
    def choose(self, view, rng):
        if view["stage"] == 0:
            return three_box.CheatTwoParticles()
        return three_box.Accept()


class ThreeBoxBobUniform(Policy):
    """Open A or B with equal probability; never inspects."""

    def choose(self, view, rng):
        return three_box.Open("A" if rng.random() < 0.5 else "B")


class ThreeBoxBobFixed(Policy):
    def __init__(self, box: str):
        if box not in ("A", "B"):
            raise ValueError(f"bad box {box!r}")
        self.box = box

    def choose(self, view, rng):
        return three_box.Open(self.box)


class ThreeBoxBobInspectAlways(Policy):
    def choose(self, view, rng):
        return three_box.InspectBoth()


class ThreeBoxBobAntiCheat(Policy):
    """Uniform box opening, but inspects both boxes with probability q."""

    def __init__(self, inspect_prob: float = 0.1):
        self.inspect_prob = inspect_prob

    def choose(self, view, rng):
        if rng.random() < self.inspect_prob:
            return three_box.InspectBoth()
        return three_box.Open("A" if rng.random() < 0.5 else "B")


# --------------------------------------------------------------------------
# Meyer coin flip
# --------------------------------------------------------------------------

class MeyerQuantumAlice(Policy):
    """Rotate into the flip-invariant superposition, then rotate back."""

    def __init__(self):
        rows = tuple(tuple(z for z in row) for row in meyer.SPREAD_MATRIX)
        self._move = meyer.Unitary(rows)

    def choose(self, view, rng):
        return self._move


class MeyerClassicalAlice(Policy):
    """Deterministic flip choices for the first and last move."""

    def __init__(self, first: str = "no_flip", last: str = "no_flip"):
        self.first = first
        self.last = last

    @staticmethod
    def _move(name: str):
        return meyer.Flip() if name == "flip" else meyer.NoFlip()

    def choose(self, view, rng):
        return self._move(self.first if view["stage"] == 0 else self.last)


class MeyerClassicalAliceUniform(Policy):
    def choose(self, view, rng):
        return meyer.Flip() if rng.random() < 0.5 else meyer.NoFlip()


class MeyerBobUniform(Policy):
    def choose(self, view, rng):
        return meyer.Flip() if rng.random() < 0.5 else meyer.NoFlip()


class MeyerBobFixed(Policy):
    def __init__(self, move: str):
        self.move = move

    def choose(self, view, rng):
        return meyer.Flip() if self.move == "flip" else meyer.NoFlip()


# --------------------------------------------------------------------------
# GHZ
# --------------------------------------------------------------------------

_GHZ_BASIS = tuple(format(i, "03b") for i in range(8))
_GHZ_AMP = 1.0 / math.sqrt(2.0)
_GHZ_START = make_state(_GHZ_BASIS, [_GHZ_AMP, 0, 0, 0, 0, 0, 0, _GHZ_AMP])


def _ghz_start() -> StateVector:
    # States are immutable, so every trial can share the same object.
    return _GHZ_START


def _local_rotation(qubit: int, basis: str) -> UnitaryOp:
    h = 1.0 / math.sqrt(2.0)
    hada = np.array([[h, h], [h, -h]], dtype=complex)
    if basis == "x":
        local = hada
    else:  # y: undo the phase, then the Hadamard
        s_dag = np.array([[1, 0], [0, -1j]], dtype=complex)
        local = hada @ s_dag
    mats = [np.eye(2, dtype=complex)] * 3
    mats[qubit] = local
    full = np.kron(np.kron(mats[0], mats[1]), mats[2])
    return make_unitary(full)


_GHZ_ROTATIONS = {(i, b): _local_rotation(i, b)
                  for i in range(3) for b in ("x", "y")}
_GHZ_BIT0 = {i: subset_projector(8, [j for j in range(8)
                                     if not (j >> (2 - i)) & 1])
             for i in range(3)}

# P(player, basis, outcome +1): rotate own qubit into the asked basis,
# keep the bit-0 half, rotate back.  Plain 8x8 projector matrices.
_GHZ_PROJ = {}
for _i in range(3):
    for _b in ("x", "y"):
        _u = _GHZ_ROTATIONS[(_i, _b)].matrix
        _GHZ_PROJ[(_i, _b)] = _u.conj().T @ _GHZ_BIT0[_i].matrix() @ _u


class GhzQuantumTeam:
    """Shared three-qubit resource; one adapter per player.

    Each player's answer function receives only that player's question:
    it measures its own qubit in the asked basis and answers +1 or -1
    for the two outcomes.  The resource vector is policy-private.
    """

    def __init__(self):
        self._state = _GHZ_START.amps

    def begin_trial(self, rng: RandomStream) -> None:
        self._state = _GHZ_START.amps

    def answer(self, player: int, question: str, rng: RandomStream) -> int:
        vec = self._state
        branch = _GHZ_PROJ[(player, question)] @ vec
        prob = float(np.vdot(branch, branch).real)
        if rng.random() < prob:
            self._state = branch / math.sqrt(prob)
            return 1
        rest = vec - branch
        self._state = rest / math.sqrt(1.0 - prob)
        return -1

    def player(self, index: int) -> "GhzTeamPlayer":
        return GhzTeamPlayer(self, index)


class GhzTeamPlayer(Policy):
    def __init__(self, team: GhzQuantumTeam, index: int):
        self._team = team
        self._index = index

    def begin_trial(self, rng):
        if self._index == 0:
            self._team.begin_trial(rng)

    def answer(self, question: str, rng: RandomStream) -> int:
        return self._team.answer(self._index, question, rng)

    def choose(self, view, rng):
        return ghz.Answer(self.answer(view["your_question"], rng))


class GhzTablePlayer(Policy):
    """Classical player: a fixed map from own question to an answer."""

    def __init__(self, on_x: int, on_y: int):
        self.on_x = on_x
        self.on_y = on_y

    def answer(self, question: str, rng: RandomStream) -> int:
        return self.on_x if question == "x" else self.on_y

    def choose(self, view, rng):
        return ghz.Answer(self.answer(view["your_question"], rng))


# Wins three of the four question triples; enumeration confirms nothing
# classical does better.
GHZ_BEST_CLASSICAL_TABLES = ((1, 1), (1, -1), (1, -1))


# --------------------------------------------------------------------------
# BB84
# --------------------------------------------------------------------------

class EveInterceptAll(Policy):
    """Intercept-resend every photon in a uniformly random basis."""

    def choose(self, view, rng):
        return bb84.INTERCEPT_DIAG if rng.random() >= 0.5 \
            else bb84.INTERCEPT_RECT

    def plan(self, n: int, rng: RandomStream):
        pick = (bb84.INTERCEPT_RECT, bb84.INTERCEPT_DIAG).__getitem__
        return list(map(pick, rng.bit_array(n).tolist()))


class EvePassAll(Policy):
    def choose(self, view, rng):
        return bb84.PASS_PHOTON

    def plan(self, n: int, rng: RandomStream):
        return [bb84.PASS_PHOTON] * n


class ReceiverThreshold(Policy):
    """Declare eavesdropping iff the check-bit error rate exceeds tau."""

    def __init__(self, tau: float = 0.0):
        self.tau = tau

    def choose(self, view, rng):
        announced = view["announced"]
        errors = announced["check_errors"]
        compared = announced["check_bits_compared"]
        if compared and errors > self.tau * compared:
            return bb84.DeclareEavesdropping()
        return bb84.DeclareClean()


# --------------------------------------------------------------------------
# profiles
# --------------------------------------------------------------------------

@dataclass
class StrategyProfile:
    kind: str
    policies: dict[str, Policy]
    description: str
    spec: dict = field(default_factory=dict)

    def begin_trial(self, rng: RandomStream) -> None:
        for policy in self.policies.values():
            policy.begin_trial(rng)


def _spec_name(spec) -> str:
    return spec["name"] if isinstance(spec, dict) else spec


def _three_box_alice(spec) -> Policy:
    name = _spec_name(spec)
    if name == "quantum":
        if isinstance(spec, dict):
            return ThreeBoxQuantumAlice(
                prep_amps=_parse_amps(spec.get("prep_amps")),
                target_amps=_parse_amps(spec.get("target_amps")))
        return ThreeBoxQuantumAlice()
    if name == "classical-a":
        return ThreeBoxClassicalAlice("A")
    if name == "classical-b":
        return ThreeBoxClassicalAlice("B")
    if name == "classical-elsewhere":
        return ThreeBoxClassicalAlice(three_box.ELSEWHERE)
    if name == "classical-uniform":
        return ThreeBoxClassicalAliceUniform()
    if name == "cheat":
        return ThreeBoxCheatAlice()
    raise ValueError(f"unknown three-box alice policy {name!r}")


def _parse_amps(raw):
    if raw is None:
        return None
    return tuple(complex(re, im) for re, im in raw)


def _three_box_bob(spec, config) -> Policy:
    name = _spec_name(spec)
    if name == "uniform":
        return ThreeBoxBobUniform()
    if name == "open-a":
        return ThreeBoxBobFixed("A")
    if name == "open-b":
        return ThreeBoxBobFixed("B")
    if name == "inspect-always":
        return ThreeBoxBobInspectAlways()
    if name == "anticheat":
        return ThreeBoxBobAntiCheat(config.inspect_prob)
    raise ValueError(f"unknown three-box bob policy {name!r}")


def _meyer_alice(spec) -> Policy:
    name = _spec_name(spec)
    if name == "quantum":
        return MeyerQuantumAlice()
    if name == "classical-uniform":
        return MeyerClassicalAliceUniform()
    if name.startswith("classical-"):
        code = name.removeprefix("classical-")
        if len(code) == 2 and set(code) <= {"f", "n"}:
            names = {"f": "flip", "n": "no_flip"}
            return MeyerClassicalAlice(names[code[0]], names[code[1]])
    raise ValueError(f"unknown meyer alice policy {name!r}")


def _meyer_bob(spec) -> Policy:
    name = _spec_name(spec)
    if name == "uniform":
        return MeyerBobUniform()
    if name in ("flip", "no-flip"):
        return MeyerBobFixed(name.replace("-", "_"))
    raise ValueError(f"unknown meyer bob policy {name!r}")


def _ghz_players(spec) -> dict[str, Policy]:
    name = _spec_name(spec)
    if name == "quantum":
        team = GhzQuantumTeam()
        return {PLAYER1: team.player(0), PLAYER2: team.player(1),
                PLAYER3: team.player(2)}
    if name == "classical-best":
        tables = GHZ_BEST_CLASSICAL_TABLES
        return {p: GhzTablePlayer(*tables[i])
                for i, p in enumerate((PLAYER1, PLAYER2, PLAYER3))}
    if name == "classical-constant":
        return {p: GhzTablePlayer(1, 1) for p in (PLAYER1, PLAYER2, PLAYER3)}
    if isinstance(spec, dict) and name == "classical-tables":
        tables = spec["tables"]
        return {p: GhzTablePlayer(*tables[i])
                for i, p in enumerate((PLAYER1, PLAYER2, PLAYER3))}
    raise ValueError(f"unknown ghz team policy {name!r}")


def _bb84_eve(spec) -> Policy:
    name = _spec_name(spec)
    if name == "intercept-all":
        return EveInterceptAll()
    if name == "pass-all":
        return EvePassAll()
    raise ValueError(f"unknown eve policy {name!r}")


def build_profile(kind: str, config, alice=None, bob=None, eve=None,
                  players=None, receiver=None) -> StrategyProfile:
    """Construct a profile from stable policy names.

    Unset roles get the canonical defaults: quantum Alice, uniform Bob,
    the quantum GHZ team, intercepting Eve, threshold receiver.
    """
    if kind == THREE_BOX:
        alice = alice or "quantum"
        bob = bob or "uniform"
        policies = {ALICE: _three_box_alice(alice),
                    BOB: _three_box_bob(bob, config)}
        desc = f"alice={_spec_name(alice)}, bob={_spec_name(bob)}"
        spec = {"alice": alice, "bob": bob}
    elif kind == MEYER:
        alice = alice or "quantum"
        bob = bob or "uniform"
        policies = {ALICE: _meyer_alice(alice), BOB: _meyer_bob(bob)}
        desc = f"alice={_spec_name(alice)}, bob={_spec_name(bob)}"
        spec = {"alice": alice, "bob": bob}
    elif kind == GHZ:
        players = players or "quantum"
        policies = _ghz_players(players)
        desc = f"players={_spec_name(players)}"
        spec = {"players": players}
    elif kind == BB84:
        eve = eve or "intercept-all"
        receiver = receiver if receiver is not None else "threshold"
        policies = {TEAM2_EVE: _bb84_eve(eve),
                    TEAM1_RECEIVER: ReceiverThreshold(config.bb84_error_threshold)}
        desc = f"eve={_spec_name(eve)}, receiver=threshold"
        spec = {"eve": eve, "receiver": receiver}
    else:
        raise ValueError(f"unknown game kind {kind!r}")
    return StrategyProfile(kind=kind, policies=policies, description=desc,
                           spec=spec)
