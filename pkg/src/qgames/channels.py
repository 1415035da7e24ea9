"""Trajectory-sampled noise channels.

Two processes the games need, both kept as pure-state (quantum
trajectory) maps: the engine never holds a density matrix.  The exact
channel action exists only as an oracle in the test suite.

* ``DephasingChannel`` — with probability p an unrecorded projective
  measurement in the computational basis happens; otherwise nothing.
  Models a classical player handling a quantum object.
* ``DisturbanceChannel`` — with probability delta the state leaks to a
  flagged orthogonal basis state |D⟩ outside the game basis; otherwise
  nothing.  Models a careless player who found the particle and
  disturbed it.  A random small rotation would *not* lower the
  acceptance probability (by symmetry it averages out), so the leak
  model is the simplest mechanism that actually makes carelessness
  costly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hilbert import BasisMismatch, StateVector, basis_state
from .rng import RandomStream

# Collapse outcomes are shared immutable values; building one zeroed
# vector per sample would dominate the dephasing hot path.
_BASIS_CACHE: dict[tuple, StateVector] = {}


def _cached_basis_state(basis: tuple, label: str) -> StateVector:
    key = (basis, label)
    state = _BASIS_CACHE.get(key)
    if state is None:
        state = basis_state(basis, label)
        _BASIS_CACHE[key] = state
    return state


@dataclass(frozen=True, slots=True)
class DephasingChannel:
    strength: float  # p in [0, 1]

    def __post_init__(self):
        if not 0.0 <= self.strength <= 1.0:
            raise ValueError(f"strength must be in [0,1], got {self.strength}")


@dataclass(frozen=True, slots=True)
class DisturbanceChannel:
    leak_prob: float  # delta in [0, 1]
    leak_target: str = "D"

    def __post_init__(self):
        if not 0.0 <= self.leak_prob <= 1.0:
            raise ValueError(f"leak_prob must be in [0,1], got {self.leak_prob}")


def dephase(ch: DephasingChannel, s: StateVector, rng: RandomStream) -> StateVector:
    """One trajectory sample of the dephasing channel.

    p=0 returns the input object unchanged (bit-for-bit identity).
    """
    p = ch.strength
    if p == 0.0:
        return s
    if rng.random() >= p:
        return s
    # Unrecorded computational-basis measurement: collapse per Born rule.
    u = rng.random()
    acc = 0.0
    probs = s.probs()
    for i in range(s.dim):
        acc += probs[i]
        if u < acc:
            return _cached_basis_state(s.basis, s.basis[i])
    return _cached_basis_state(s.basis, s.basis[s.dim - 1])


def disturb(ch: DisturbanceChannel, s: StateVector, rng: RandomStream) -> StateVector:
    """One trajectory sample of the disturbance channel."""
    if ch.leak_target not in s.basis:
        raise BasisMismatch(
            f"state basis {s.basis} lacks leak target {ch.leak_target!r}")
    d = ch.leak_prob
    if d == 0.0:
        return s
    if rng.random() < d:
        return _cached_basis_state(s.basis, ch.leak_target)
    return s


def dephasing_kraus(ch: DephasingChannel, dim: int) -> list[np.ndarray]:
    """Kraus decomposition matching the trajectory unfolding.

    K0 = sqrt(1-p) I plus sqrt(p)|i⟩⟨i| per basis state; completeness
    sum(K†K) = (1-p)I + p I = I holds by construction.
    """
    p = ch.strength
    ops = [np.sqrt(1.0 - p) * np.eye(dim, dtype=np.complex128)]
    for i in range(dim):
        k = np.zeros((dim, dim), dtype=np.complex128)
        k[i, i] = np.sqrt(p)
        ops.append(k)
    return ops


def disturbance_kraus(ch: DisturbanceChannel, basis: tuple[str, ...]) -> list[np.ndarray]:
    """Kraus form of the leak: sqrt(1-d) I plus sqrt(d)|D⟩⟨i| per i."""
    d = ch.leak_prob
    dim = len(basis)
    target = basis.index(ch.leak_target)
    ops = [np.sqrt(1.0 - d) * np.eye(dim, dtype=np.complex128)]
    for i in range(dim):
        k = np.zeros((dim, dim), dtype=np.complex128)
        k[target, i] = np.sqrt(d)
        ops.append(k)
    return ops


def trajectory_branches(channel, s: StateVector) -> list[tuple[float, StateVector]]:
    """Enumerate (probability, outcome-state) branches of one channel step.

    This is exactly the distribution ``dephase``/``disturb`` sample from;
    tests use it to accumulate trajectory averages in bulk.
    """
    if isinstance(channel, DephasingChannel):
        p = channel.strength
        branches = [(1.0 - p, s)]
        if p > 0.0:
            probs = s.probs()
            branches += [(p * float(probs[i]), basis_state(s.basis, s.basis[i]))
                         for i in range(s.dim)]
        return branches
    if isinstance(channel, DisturbanceChannel):
        if channel.leak_target not in s.basis:
            raise BasisMismatch(
                f"state basis {s.basis} lacks leak target {channel.leak_target!r}")
        d = channel.leak_prob
        branches = [(1.0 - d, s)]
        if d > 0.0:
            branches.append((d, basis_state(s.basis, channel.leak_target)))
        return branches
    raise TypeError(f"unknown channel {channel!r}")
