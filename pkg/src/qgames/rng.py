"""Deterministic counter-based random streams.

Every random draw in the engine comes from a ``RandomStream`` keyed by
(seed, trial_index).  The backing generator is Philox, a counter-based
RNG: the stream position is literally a counter, so stream state is
fully determined by (seed, trial_index, draw_index).  Trials can run in
any order, on any number of workers, and replay bit-identically.
"""
from __future__ import annotations

from numpy.random import Generator, Philox

_MASK64 = (1 << 64) - 1


class RandomStream:
    """Philox-backed uniform stream for one (seed, trial_index) key.

    ``reset_trial`` re-keys the generator in place; it is much cheaper
    than constructing a new stream and is what the Monte Carlo harness
    uses between trials.  ``draws`` counts the uniforms consumed, which
    trial records report for replay audits.
    """

    __slots__ = ("seed", "trial_index", "draws", "_bit_gen", "_gen")

    def __init__(self, seed: int, trial_index: int = 0):
        self.seed = seed
        self.trial_index = trial_index
        self.draws = 0
        self._bit_gen = Philox(key=[seed & _MASK64, trial_index & _MASK64])
        self._gen = Generator(self._bit_gen)

    def reset_trial(self, trial_index: int) -> "RandomStream":
        state = self._bit_gen.state
        state["state"] = {
            "counter": [0, 0, 0, 0],
            "key": [self.seed & _MASK64, trial_index & _MASK64],
        }
        state["buffer_pos"] = 4  # discard buffered outputs of the old key
        state["has_uint32"] = 0
        state["uinteger"] = 0
        self._bit_gen.state = state
        self.trial_index = trial_index
        self.draws = 0
        return self

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        self.draws += 1
        return self._gen.random()

    def random_array(self, n: int):
        """n uniform floats in [0, 1) as an ndarray (counts as n draws)."""
        self.draws += n
        return self._gen.random(n)

    def bit(self) -> int:
        return 1 if self.random() >= 0.5 else 0

    def bit_array(self, n: int):
        return (self.random_array(n) >= 0.5).astype("uint8")

    def index(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        i = int(self.random() * n)
        return n - 1 if i >= n else i

    def choice(self, items, probs=None):
        """Pick one item, optionally weighted by ``probs`` (must sum to ~1)."""
        if probs is None:
            return items[self.index(len(items))]
        u = self.random()
        acc = 0.0
        for item, p in zip(items, probs):
            acc += p
            if u < acc:
                return item
        return items[-1]

    def __repr__(self) -> str:
        return (f"RandomStream(seed={self.seed}, trial_index={self.trial_index}, "
                f"draws={self.draws})")
