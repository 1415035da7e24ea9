"""Small-dimension complex state vectors with Born-rule measurement.

States live in labeled Hilbert spaces of dimension at most 8 (three
qubits is the largest system any game needs).  Everything is a dense
numpy array under the hood; all values are immutable.

Tolerance policy:

* ``CONSTRUCT_TOL`` (1e-6)  — slack allowed on caller-supplied amplitudes;
  anything worse is rejected rather than silently renormalized.
* ``ALGEBRA_TOL``  (1e-9)  — accumulation error allowed in runtime algebra
  (unitarity checks, norm preservation).
* ``EXACT_TOL``    (1e-12) — near-exact comparisons.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .rng import RandomStream

MAX_DIM = 8
CONSTRUCT_TOL = 1e-6
ALGEBRA_TOL = 1e-9
EXACT_TOL = 1e-12


class HilbertError(ValueError):
    """Base for state-algebra errors."""


class DimensionMismatch(HilbertError):
    pass


class BasisMismatch(HilbertError):
    pass


class NormDefect(HilbertError):
    pass


class NonUnitary(HilbertError):
    pass


class DegenerateBranch(RuntimeError):
    """Tried to normalize a zero-norm measurement branch; internal bug."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False, slots=True)
class StateVector:
    """Normalized amplitudes over an ordered, labeled basis."""

    basis: tuple[str, ...]
    amps: np.ndarray  # complex128, read-only, unit norm

    @property
    def dim(self) -> int:
        return len(self.basis)

    def amplitude(self, label: str) -> complex:
        return complex(self.amps[self.basis.index(label)])

    def probs(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def __repr__(self) -> str:
        terms = ", ".join(f"{lbl}: {a:.4g}" for lbl, a in zip(self.basis, self.amps))
        return f"StateVector({terms})"


def make_state(basis: Sequence[str], amps: Sequence[complex]) -> StateVector:
    """Build a state from caller-supplied amplitudes.

    The caller must supply an (almost) normalized vector: a norm defect
    beyond ``CONSTRUCT_TOL`` is an error, not something to paper over.
    The residual defect below tolerance is divided out.
    """
    basis = tuple(str(b) for b in basis)
    if not 1 <= len(basis) <= MAX_DIM:
        raise DimensionMismatch(f"dimension must be in 1..{MAX_DIM}, got {len(basis)}")
    if len(set(basis)) != len(basis):
        raise HilbertError(f"duplicate basis labels in {basis}")
    vec = np.asarray(amps, dtype=np.complex128)
    if vec.shape != (len(basis),):
        raise DimensionMismatch(
            f"got {vec.shape[0] if vec.ndim == 1 else vec.shape} amplitudes "
            f"for a {len(basis)}-dimensional basis")
    if not np.all(np.isfinite(vec.view(np.float64))):
        raise HilbertError("amplitudes must be finite")
    norm = float(np.linalg.norm(vec))
    if norm < CONSTRUCT_TOL:
        raise NormDefect("zero vector is not a state")
    if abs(norm - 1.0) > CONSTRUCT_TOL:
        raise NormDefect(f"norm defect {abs(norm - 1.0):.3g} exceeds {CONSTRUCT_TOL}")
    return StateVector(basis, _freeze(vec / norm))


def _renormalized(basis: tuple[str, ...], vec: np.ndarray) -> StateVector:
    # Internal constructor for algebra results; defects here mean a bug.
    norm = math.sqrt(np.vdot(vec, vec).real)
    if abs(norm - 1.0) > ALGEBRA_TOL:
        raise DegenerateBranch(f"internal norm drift {abs(norm - 1.0):.3g}")
    return StateVector(basis, _freeze(vec / norm))


def basis_state(basis: Sequence[str], label: str) -> StateVector:
    basis = tuple(basis)
    vec = np.zeros(len(basis), dtype=np.complex128)
    vec[basis.index(label)] = 1.0
    return StateVector(basis, _freeze(vec))


def inner(a: StateVector, b: StateVector) -> complex:
    """⟨a|b⟩, conjugate-linear in the first argument."""
    if a.basis != b.basis:
        raise BasisMismatch(f"bases differ: {a.basis} vs {b.basis}")
    return complex(np.vdot(a.amps, b.amps))


@dataclass(frozen=True, eq=False, slots=True)
class UnitaryOp:
    """A dim x dim unitary; construct through :func:`make_unitary`."""

    matrix: np.ndarray  # complex128, read-only

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> "UnitaryOp":
        return UnitaryOp(_freeze(self.matrix.conj().T.copy()))


def make_unitary(matrix) -> UnitaryOp:
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"unitary must be square, got shape {m.shape}")
    if not 1 <= m.shape[0] <= MAX_DIM:
        raise DimensionMismatch(f"dimension must be in 1..{MAX_DIM}")
    defect = np.abs(m.conj().T @ m - np.eye(m.shape[0])).max()
    if defect > ALGEBRA_TOL:
        raise NonUnitary(f"U†U deviates from I by {defect:.3g}")
    return UnitaryOp(_freeze(m))


def apply(u: UnitaryOp, s: StateVector) -> StateVector:
    if u.dim != s.dim:
        raise DimensionMismatch(f"operator dim {u.dim} != state dim {s.dim}")
    return _renormalized(s.basis, u.matrix @ s.amps)


@dataclass(frozen=True, eq=False, slots=True)
class Projector:
    """Either a computational-basis subset or a rank-1 projector |t⟩⟨t|."""

    dim: int
    subset: Optional[frozenset[int]] = None
    target: Optional[StateVector] = None
    mask: Optional[np.ndarray] = None   # bool mask derived from subset
    single: Optional[int] = None        # set when the subset has one index

    def matrix(self) -> np.ndarray:
        if self.subset is not None:
            m = np.zeros((self.dim, self.dim), dtype=np.complex128)
            for i in self.subset:
                m[i, i] = 1.0
            return m
        t = self.target.amps
        return np.outer(t, t.conj())


def subset_projector(dim: int, indices) -> Projector:
    idx = frozenset(int(i) for i in indices)
    if any(i < 0 or i >= dim for i in idx):
        raise DimensionMismatch(f"indices {sorted(idx)} out of range for dim {dim}")
    mask = np.zeros(dim, dtype=bool)
    mask[list(idx)] = True
    single = next(iter(idx)) if len(idx) == 1 else None
    return Projector(dim, subset=idx, mask=_freeze(mask), single=single)


def label_projector(basis: Sequence[str], labels) -> Projector:
    basis = tuple(basis)
    if isinstance(labels, str):
        labels = [labels]
    return subset_projector(len(basis), [basis.index(l) for l in labels])


def rank1_projector(target: StateVector) -> Projector:
    return Projector(target.dim, target=target)


@dataclass(frozen=True, eq=False, slots=True)
class MeasureResult:
    found: bool
    prob_found: float
    post_state: StateVector


def born_prob(p: Projector, s: StateVector) -> float:
    """⟨s|P|s⟩, clamped into [0, 1] (slack up to EXACT_TOL)."""
    if p.dim != s.dim:
        raise DimensionMismatch(f"projector dim {p.dim} != state dim {s.dim}")
    if p.single is not None:
        val = float(abs(s.amps[p.single])) ** 2
    elif p.mask is not None:
        amps = s.amps
        val = float(amps.real @ (p.mask * amps.real)
                    + amps.imag @ (p.mask * amps.imag))
    else:
        if p.target.basis != s.basis:
            raise BasisMismatch("rank-1 projector target basis differs from state")
        val = float(abs(np.vdot(p.target.amps, s.amps))) ** 2
    if val < -EXACT_TOL or val > 1.0 + EXACT_TOL:
        raise HilbertError(f"born probability {val} out of [0,1]")
    return min(max(val, 0.0), 1.0)


def _project(p: Projector, s: StateVector) -> np.ndarray:
    if p.mask is not None:
        return np.where(p.mask, s.amps, 0.0)
    return p.target.amps * np.vdot(p.target.amps, s.amps)


def measure(p: Projector, s: StateVector, rng: RandomStream) -> MeasureResult:
    """Projective measurement of P on s: collapse per the Born rule.

    found=True lands in P|s⟩/‖P|s⟩‖, found=False in the complement branch.
    Deterministic given the stream state.
    """
    prob = born_prob(p, s)
    found = bool(rng.random() < prob)
    if found:
        branch = _project(p, s)
        norm_sq = prob
    elif p.mask is not None:
        branch = np.where(p.mask, 0.0, s.amps)
        norm_sq = 1.0 - prob
    else:
        branch = s.amps - _project(p, s)
        norm_sq = 1.0 - prob
    if norm_sq < EXACT_TOL:
        raise DegenerateBranch(
            f"measurement selected a branch of probability {norm_sq:.3g}")
    post = StateVector(s.basis, _freeze(branch / np.sqrt(norm_sq)))
    return MeasureResult(found=found, prob_found=prob, post_state=post)


def states_equal(a: StateVector, b: StateVector, tol: float = EXACT_TOL) -> bool:
    return a.basis == b.basis and bool(np.max(np.abs(a.amps - b.amps)) <= tol)


def identity(dim: int) -> UnitaryOp:
    return UnitaryOp(_freeze(np.eye(dim, dtype=np.complex128)))
