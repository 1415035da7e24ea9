"""qgames: classically defined games where quantum strategies win.

Engine layers:

* ``hilbert``  — labeled state vectors, unitaries, Born-rule measurement
* ``channels`` — trajectory-sampled dephasing and disturbance noise
* ``games``    — four game state machines behind one uniform interface
* ``policies`` — executable strategies (quantum and classical)
* ``strategy`` — exact game values: enumeration, minimax, closed forms
* ``harness``  — reproducible Monte Carlo runner and report emission
* ``service``  — HTTP sessions for live play with role-scoped views
"""
from .games.base import GameConfig, PayoffTable
from .rng import RandomStream

__all__ = ["GameConfig", "PayoffTable", "RandomStream"]

__version__ = "0.1.0"
