"""Exact game values: enumeration, minimax, and closed-form evaluation.

Everything here is exact arithmetic.  Branch probabilities are Fractions;
amplitude algebra goes through sympy so quantities like |<target|A>|^2
come out as literal rationals (1/3, 1/9, 0) rather than floats.  The
Monte Carlo harness never calls into this module: it is the independent
side of every dual-route check.

Strategies here are *plans* (data), not executable policies: a plan can
only express decisions a role could actually make from its own view, so
information infeasibility is unrepresentable by construction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional, Sequence, Union

from .games.base import BB84, GHZ, MEYER, THREE_BOX, GameConfig

Number = Union[Fraction, float]


class NotEnumerable(ValueError):
    """Enumeration requested over an unboundedly parameterized move set."""


class NotReducible(ValueError):
    """Game value requested for a structure the exact solver cannot reduce."""


# ---------------------------------------------------------------------------
# values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GameValue:
    """An exactly computed quantity plus the strategy achieving it."""

    kind: str
    label: str
    value: Number
    exact: bool
    strategy: str
    details: dict = field(default_factory=dict)

    def exact_str(self) -> str:
        return _render(self.value)

    def decimal(self) -> float:
        return float(self.value)

    def to_json(self) -> dict:
        out = {
            "game": self.kind,
            "label": self.label,
            "value": self.exact_str(),
            "decimal": self.decimal(),
            "exact": self.exact,
            "strategy": self.strategy,
        }
        out["details"] = {k: {"value": _render(v), "decimal": float(v)}
                          for k, v in self.details.items()}
        return out


def _render(v: Number) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return repr(v)


# ---------------------------------------------------------------------------
# deterministic strategies and their enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThreeBoxDetStrategy:
    place: str      # "A" | "B" | "elsewhere"
    decision: str   # "accept" | "cancel"
    bob: str        # "open_a" | "open_b" | "inspect"


@dataclass(frozen=True)
class MeyerDetStrategy:
    alice_first: str  # "flip" | "no_flip"
    alice_last: str
    bob: str


@dataclass(frozen=True)
class GhzDetStrategy:
    # One (answer on x, answer on y) table per player.
    tables: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class MixedStrategy:
    """Probability mixture over deterministic strategies."""

    components: tuple  # ((weight, strategy), ...)

    def __post_init__(self):
        total = sum(w for w, _ in self.components)
        if any(w < 0 for w, _ in self.components):
            raise ValueError("mixture weights must be nonnegative")
        if abs(float(total) - 1.0) > 1e-12:
            raise ValueError(f"mixture weights sum to {total}, not 1")


_PLACES = ("A", "B", "elsewhere")
_DECISIONS = ("accept", "cancel")
_BOB_MOVES = ("open_a", "open_b", "inspect")
_FLIPS = ("flip", "no_flip")
_GHZ_TABLES = tuple(itertools.product((1, -1), repeat=2))


def enumerate_deterministic(kind: str, side: str = "classical",
                            roles: Optional[set] = None) -> list:
    """Complete, duplicate-free enumeration of deterministic strategies.

    ``roles`` restricts to one side's strategy set; default enumerates
    full profiles.  Quantum move sets are continuous, hence not
    enumerable.  Cheating is not a strategy of the classical game and is
    excluded; the anti-cheat machinery is tested at the rules level.
    """
    if side == "quantum":
        raise NotEnumerable(
            f"the quantum side of {kind} ranges over a continuum of moves")
    if kind == THREE_BOX:
        if roles == {"alice"}:
            return [ThreeBoxDetStrategy(p, d, "open_a")
                    for p in _PLACES for d in _DECISIONS]
        if roles == {"bob"}:
            return list(_BOB_MOVES)
        return [ThreeBoxDetStrategy(p, d, b)
                for p in _PLACES for d in _DECISIONS for b in _BOB_MOVES]
    if kind == MEYER:
        if roles == {"alice"}:
            return [MeyerDetStrategy(f, l, "no_flip")
                    for f in _FLIPS for l in _FLIPS]
        if roles == {"bob"}:
            return list(_FLIPS)
        return [MeyerDetStrategy(f, l, b)
                for f in _FLIPS for l in _FLIPS for b in _FLIPS]
    if kind == GHZ:
        return [GhzDetStrategy((t1, t2, t3))
                for t1 in _GHZ_TABLES for t2 in _GHZ_TABLES
                for t3 in _GHZ_TABLES]
    if kind == BB84:
        raise NotEnumerable(
            "per-photon eavesdropping strategies grow exponentially in the "
            "photon count; evaluate named policies instead")
    raise ValueError(f"unknown game kind {kind!r}")


# ---------------------------------------------------------------------------
# exact 2-column zero-sum matrix games
# ---------------------------------------------------------------------------

def _drop_dominated_columns(matrix: list[list[Fraction]]) -> list[int]:
    """Indices of columns that survive weak-dominance removal.

    The column player minimizes; a column is dropped when another kept
    column is entrywise <= it (ties broken by index to keep one copy).
    """
    n_cols = len(matrix[0])
    kept = list(range(n_cols))
    changed = True
    while changed:
        changed = False
        for j in list(kept):
            for k in kept:
                if k == j:
                    continue
                col_k = [row[k] for row in matrix]
                col_j = [row[j] for row in matrix]
                if all(a <= b for a, b in zip(col_k, col_j)) and \
                        (col_k != col_j or k < j):
                    kept.remove(j)
                    changed = True
                    break
            if changed:
                break
    return kept


def matrix_game_value(matrix: Sequence[Sequence[Fraction]]):
    """Exact minimax of a zero-sum matrix game with <= 2 live columns.

    Row player maximizes.  Returns (value, row_mixture) with Fractions.
    The graphical closed form needs at most two undominated columns,
    which covers every reducible game in scope.
    """
    rows = [[Fraction(x) for x in row] for row in matrix]
    kept = _drop_dominated_columns(rows)
    if len(kept) > 2:
        raise NotReducible(
            f"{len(kept)} undominated columns; exact closed form handles 2")
    cols = kept
    best = None
    best_mix = None
    for r, row in enumerate(rows):
        v = min(row[c] for c in cols)
        if best is None or v > best:
            best, best_mix = v, {r: Fraction(1)}
    if len(cols) == 2:
        c0, c1 = cols
        for r, srow in itertools.combinations(range(len(rows)), 2):
            d_r = rows[r][c0] - rows[r][c1]
            d_s = rows[srow][c0] - rows[srow][c1]
            denom = d_s - d_r
            if denom == 0:
                continue
            x = d_s / denom
            if not 0 <= x <= 1:
                continue
            v = x * rows[r][c0] + (1 - x) * rows[srow][c0]
            if v > best:
                best = v
                best_mix = {r: x, srow: 1 - x}
    return best, best_mix


# ---------------------------------------------------------------------------
# exact amplitude algebra (sympy only inside this block)
# ---------------------------------------------------------------------------

def _sp():
    import sympy
    return sympy


def _to_number(expr) -> tuple[Number, bool]:
    """Collapse a sympy scalar to Fraction when rational, float otherwise."""
    sp = _sp()
    expr = sp.expand(expr)
    if expr.is_Rational:
        return Fraction(int(expr.p), int(expr.q)), True
    expr = sp.simplify(expr)
    if expr.is_Rational:
        return Fraction(int(expr.p), int(expr.q)), True
    return float(expr), False


def _rational(x) -> "object":
    sp = _sp()
    if isinstance(x, Fraction):
        return sp.Rational(x.numerator, x.denominator)
    return sp.sympify(x)


def _scalar(z):
    """Lift a plan amplitude into sympy without snapping floats to surds."""
    sp = _sp()
    if isinstance(z, Fraction):
        return sp.Rational(z.numerator, z.denominator)
    if isinstance(z, complex):
        return sp.Float(z.real) + sp.I * sp.Float(z.imag)
    if isinstance(z, float):
        return sp.Float(z)
    return sp.sympify(z)


def _abs2(z):
    sp = _sp()
    return sp.expand(sp.conjugate(z) * z)


@dataclass(frozen=True)
class QuantumAlicePlan:
    """Quantum three-box plan: preparation, closing target, accept rule.

    Amplitudes may be exact sympy scalars; the canonical plan is the
    even spread with the sign-flipped closing target.
    """

    prep: tuple
    target: tuple
    accept_rule: str = "iff_found"  # | "always" | "never"


@dataclass(frozen=True)
class ClassicalAlicePlan:
    place: str
    decision: str = "accept"


@dataclass(frozen=True)
class BobMix:
    open_a: Fraction = Fraction(1, 2)
    open_b: Fraction = Fraction(1, 2)
    inspect: Fraction = Fraction(0)

    def __post_init__(self):
        total = self.open_a + self.open_b + self.inspect
        if total != 1:
            raise ValueError(f"Bob mixture sums to {total}, not 1")
        if min(self.open_a, self.open_b, self.inspect) < 0:
            raise ValueError("Bob mixture weights must be nonnegative")


def canonical_quantum_plan() -> QuantumAlicePlan:
    sp = _sp()
    r3 = 1 / sp.sqrt(3)
    return QuantumAlicePlan(prep=(r3, r3, r3), target=(r3, r3, -r3))


def _normalize_exact(vec):
    sp = _sp()
    vec = tuple(_scalar(z) for z in vec)
    norm2 = sp.expand(sum(_abs2(z) for z in vec))
    if norm2 == 0:
        raise ValueError("zero vector")
    scale = 1 / sp.sqrt(norm2)
    return tuple(sp.expand(z * scale) for z in vec)


def _three_box_branches(plan, delta: Fraction):
    """Outcome branches: (probability, found?, accept-probability).

    Probabilities are sympy scalars; the disturbance leak and Alice's
    closing measurement are folded in exactly.
    """
    sp = _sp()
    d = _rational(delta)
    if isinstance(plan, ClassicalAlicePlan):
        place = {"A": 0, "B": 1, "elsewhere": 2}[plan.place]
        prep = tuple(sp.Integer(1) if i == place else sp.Integer(0)
                     for i in range(4))
        accept = sp.Integer(1 if plan.decision == "accept" else 0)
        quantum = False
    else:
        prep = _normalize_exact(tuple(plan.prep) + (sp.Integer(0),))
        target = _normalize_exact(tuple(plan.target) + (sp.Integer(0),))
        quantum = True

    def accept_prob(post):
        if not quantum:
            return accept
        if plan.accept_rule == "always":
            return sp.Integer(1)
        if plan.accept_rule == "never":
            return sp.Integer(0)
        overlap = sum(sp.conjugate(t) * z for t, z in zip(target, post))
        return _abs2(overlap)

    basis = [tuple(sp.Integer(1 if j == i else 0) for j in range(4))
             for i in range(4)]

    def found_branches(box_index):
        """Found the particle in box_index: maybe leak, then close."""
        out = []
        if quantum and delta != 0:
            out.append((d, True, accept_prob(basis[3])))
            out.append(((1 - d), True, accept_prob(basis[box_index])))
        else:
            out.append((sp.Integer(1), True, accept_prob(basis[box_index])))
        return out

    def open_one(box_index):
        p_find = _abs2(prep[box_index])
        branches = [(p_find * w, f, a) for w, f, a in found_branches(box_index)]
        p_miss = sp.expand(1 - p_find)
        if p_miss != 0:
            rest = list(prep)
            rest[box_index] = sp.Integer(0)
            rest = _normalize_exact(rest)
            branches.append((p_miss, False, accept_prob(rest)))
        return branches

    def inspect_both():
        p_a, p_b = _abs2(prep[0]), _abs2(prep[1])
        branches = [(p_a * w, f, acc) for w, f, acc in found_branches(0)]
        branches += [(p_b * w, f, acc) for w, f, acc in found_branches(1)]
        p_none = sp.expand(1 - p_a - p_b)
        if p_none != 0:
            rest = [sp.Integer(0), sp.Integer(0), prep[2], prep[3]]
            rest = _normalize_exact(rest)
            branches.append((p_none, False, accept_prob(rest)))
        return branches

    return open_one(0), open_one(1), inspect_both()


def evaluate_three_box(alice, bob: BobMix, config: GameConfig) -> GameValue:
    """Exact outcome-tree evaluation of a three-box profile."""
    sp = _sp()
    delta = Fraction(config.disturbance_delta)
    by_a, by_b, by_i = _three_box_branches(alice, delta)
    weights = [(_rational(bob.open_a), by_a), (_rational(bob.open_b), by_b),
               (_rational(bob.inspect), by_i)]
    p_accept = sp.Integer(0)
    p_accept_found = sp.Integer(0)
    p_found = sp.Integer(0)
    for w, branches in weights:
        if w == 0:
            continue
        for prob, found, acc in branches:
            p_accept += w * prob * acc
            if found:
                p_found += w * prob
                p_accept_found += w * prob * acc
    accept_rate, ex1 = _to_number(p_accept)
    win_rate, ex2 = _to_number(p_accept_found)
    find_rate, ex3 = _to_number(p_found)
    if accept_rate == 0:
        conditional = Fraction(0)  # total order over strategies needs a value
        ex4 = True
    else:
        conditional, ex4 = _to_number(p_accept_found / p_accept)
    exact = ex1 and ex2 and ex3 and ex4
    details = {"accept_rate": accept_rate, "find_rate": find_rate,
               "p_accept_and_found": win_rate}
    if find_rate != 0:
        details["accept_given_find"], _ = _to_number(p_accept_found / p_found)
    desc = ("quantum alice" if isinstance(alice, QuantumAlicePlan)
            else f"place {alice.place}, {alice.decision}")
    return GameValue(kind=THREE_BOX, label="conditional win rate",
                     value=conditional, exact=exact,
                     strategy=f"{desc} vs bob({bob.open_a}, {bob.open_b}, "
                              f"{bob.inspect})",
                     details=details)


def conditional_independence_check(alice: ClassicalAlicePlan, bob: BobMix,
                                   config: GameConfig) -> bool:
    """True iff accept/cancel is statistically independent of found.

    Computed exactly on the outcome tree.  Classical observation leaves
    no trace, so every legal classical profile must pass.
    """
    sp = _sp()
    delta = Fraction(config.disturbance_delta)
    by_a, by_b, by_i = _three_box_branches(alice, delta)
    weights = [(_rational(bob.open_a), by_a), (_rational(bob.open_b), by_b),
               (_rational(bob.inspect), by_i)]
    p_accept = p_found = p_both = sp.Integer(0)
    for w, branches in weights:
        if w == 0:
            continue
        for prob, found, acc in branches:
            p_accept += w * prob * acc
            if found:
                p_found += w * prob
                p_both += w * prob * acc
    return sp.expand(p_both - p_accept * p_found) == 0


# ---------------------------------------------------------------------------
# Meyer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuantumMeyerPlan:
    """Alice's two unitaries; the canonical plan rotates out and back."""

    first: tuple   # 2x2 rows
    last: tuple


@dataclass(frozen=True)
class ClassicalMeyerPlan:
    first: str  # "flip" | "no_flip"
    last: str


@dataclass(frozen=True)
class MeyerBobMix:
    flip: Fraction = Fraction(1, 2)
    no_flip: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if self.flip + self.no_flip != 1 or min(self.flip, self.no_flip) < 0:
            raise ValueError("bad Bob mixture")


def canonical_quantum_meyer() -> QuantumMeyerPlan:
    sp = _sp()
    h = 1 / sp.sqrt(2)
    rows = ((h, h), (h, -h))
    return QuantumMeyerPlan(first=rows, last=rows)


def _meyer_matrix(plan_move):
    sp = _sp()
    if plan_move == "flip":
        return sp.Matrix([[0, 1], [1, 0]])
    if plan_move == "no_flip":
        return sp.eye(2)
    return sp.Matrix(2, 2, [_scalar(z) for row in plan_move for z in row])


def evaluate_meyer(alice, bob: MeyerBobMix, config: GameConfig) -> GameValue:
    """Exact win probability of the coin game through the dephasing step."""
    sp = _sp()
    p = _rational(Fraction(config.dephasing_p))
    if isinstance(alice, ClassicalMeyerPlan):
        u1, u2 = _meyer_matrix(alice.first), _meyer_matrix(alice.last)
        desc = f"classical alice ({alice.first}, {alice.last})"
    else:
        u1, u2 = _meyer_matrix(alice.first), _meyer_matrix(alice.last)
        desc = "quantum alice"
    start = sp.Matrix([1, 0])
    s1 = u1 * start
    win = sp.Integer(0)
    for w, bob_matrix in ((_rational(bob.no_flip), sp.eye(2)),
                          (_rational(bob.flip), sp.Matrix([[0, 1], [1, 0]]))):
        if w == 0:
            continue
        s2 = bob_matrix * s1
        branches = [(1 - p, s2)]
        if p != 0:
            for i in range(2):
                basis = sp.Matrix([1, 0]) if i == 0 else sp.Matrix([0, 1])
                branches.append((p * _abs2(s2[i]), basis))
        for prob, state in branches:
            if prob == 0:
                continue
            final = u2 * state
            win += w * prob * _abs2(final[0])
    value, exact = _to_number(win)
    return GameValue(kind=MEYER, label="win probability", value=value,
                     exact=exact, strategy=f"{desc} vs bob(flip={bob.flip})")


# ---------------------------------------------------------------------------
# GHZ
# ---------------------------------------------------------------------------

_GHZ_QUESTIONS = (("x", "x", "x"), ("x", "y", "y"),
                  ("y", "x", "y"), ("y", "y", "x"))


def _ghz_win(questions, answers) -> bool:
    target = 1 if questions == ("x", "x", "x") else -1
    return answers[0] * answers[1] * answers[2] == target


def evaluate_ghz_tables(strategy: GhzDetStrategy) -> GameValue:
    wins = sum(_ghz_win(q, tuple(t[0 if qq == "x" else 1]
                                 for t, qq in zip(strategy.tables, q)))
               for q in _GHZ_QUESTIONS)
    return GameValue(kind=GHZ, label="win probability",
                     value=Fraction(wins, 4), exact=True,
                     strategy=f"tables {strategy.tables}")


def evaluate_ghz_mixture(mixture: MixedStrategy) -> GameValue:
    """Question-outer traversal of a mixture (the linearity cross-check)."""
    total = Fraction(0)
    for q in _GHZ_QUESTIONS:
        win_q = Fraction(0)
        for weight, strat in mixture.components:
            answers = tuple(t[0 if qq == "x" else 1]
                            for t, qq in zip(strat.tables, q))
            if _ghz_win(q, answers):
                win_q += Fraction(weight)
        total += Fraction(1, 4) * win_q
    return GameValue(kind=GHZ, label="win probability", value=total,
                     exact=True, strategy=f"mixture of {len(mixture.components)}")


@lru_cache(maxsize=1)
def ghz_quantum_value() -> GameValue:
    """Born probabilities of the entangled strategy on all four questions.

    Eight-dimensional state-vector computation, exact arithmetic.
    """
    sp = _sp()
    s2 = sp.sqrt(2)
    state = sp.zeros(8, 1)
    state[0] = 1 / s2
    state[7] = 1 / s2
    kets = {("x", 1): sp.Matrix([1, 1]) / s2,
            ("x", -1): sp.Matrix([1, -1]) / s2,
            ("y", 1): sp.Matrix([1, sp.I]) / s2,
            ("y", -1): sp.Matrix([1, -sp.I]) / s2}
    projs = {k: v * v.H for k, v in kets.items()}

    def kron3(a, b, c):
        from sympy.physics.quantum import TensorProduct
        return TensorProduct(TensorProduct(a, b), c)

    total = sp.Integer(0)
    for q in _GHZ_QUESTIONS:
        win_q = sp.Integer(0)
        for answers in itertools.product((1, -1), repeat=3):
            if not _ghz_win(q, answers):
                continue
            m = kron3(projs[(q[0], answers[0])], projs[(q[1], answers[1])],
                      projs[(q[2], answers[2])])
            win_q += sp.expand((state.H * m * state)[0, 0])
        total += sp.Rational(1, 4) * win_q
    value, exact = _to_number(total)
    return GameValue(kind=GHZ, label="win probability", value=value,
                     exact=exact,
                     strategy="shared (|000>+|111>)/sqrt(2), measure x/y")


# ---------------------------------------------------------------------------
# BB84
# ---------------------------------------------------------------------------

def bb84_detection_probability(config: GameConfig) -> GameValue:
    """P(alarm) against full intercept-resend, exact over sift counts.

    Each checked bit on a tapped line errs with probability 1/4; the
    number of checked bits is min(k, sifted) with sifted ~ Binomial(n, 1/2).
    """
    n, k = config.bb84_n_photons, config.bb84_check_bits
    total = Fraction(0)
    for s in range(n + 1):
        p_s = Fraction(comb(n, s), 2 ** n)
        total += p_s * (1 - Fraction(3, 4) ** min(k, s))
    return GameValue(kind=BB84, label="detection probability", value=total,
                     exact=True,
                     strategy=f"eve intercept-all vs {k} check bits",
                     details={"idealized": 1 - Fraction(3, 4) ** k})


def bb84_value(eve: str, config: GameConfig) -> GameValue:
    """P(team 1 calls it right) for the named eavesdropping policies."""
    if eve == "pass-all":
        return GameValue(kind=BB84, label="correct call probability",
                         value=Fraction(1), exact=True,
                         strategy="eve passive; no error can appear, no alarm")
    if eve == "intercept-all":
        det = bb84_detection_probability(config)
        return GameValue(kind=BB84, label="correct call probability",
                         value=det.value, exact=True, strategy=det.strategy,
                         details=det.details)
    raise ValueError(f"unknown eve policy {eve!r}")


# ---------------------------------------------------------------------------
# headline values
# ---------------------------------------------------------------------------

def evaluate(kind: str, profile, config: GameConfig) -> GameValue:
    """Evaluate one profile exactly; dispatches on the plan types."""
    if kind == THREE_BOX:
        alice, bob = profile
        if isinstance(alice, ThreeBoxDetStrategy):
            bobmix = {"open_a": BobMix(Fraction(1), Fraction(0)),
                      "open_b": BobMix(Fraction(0), Fraction(1)),
                      "inspect": BobMix(Fraction(0), Fraction(0), Fraction(1))}[
                          alice.bob]
            return evaluate_three_box(
                ClassicalAlicePlan(alice.place, alice.decision), bobmix, config)
        return evaluate_three_box(alice, bob, config)
    if kind == MEYER:
        if isinstance(profile, MeyerDetStrategy):
            return evaluate_meyer(
                ClassicalMeyerPlan(profile.alice_first, profile.alice_last),
                MeyerBobMix(Fraction(1 if profile.bob == "flip" else 0),
                            Fraction(0 if profile.bob == "flip" else 1)),
                config)
        alice, bob = profile
        return evaluate_meyer(alice, bob, config)
    if kind == GHZ:
        if isinstance(profile, GhzDetStrategy):
            return evaluate_ghz_tables(profile)
        if isinstance(profile, MixedStrategy):
            return evaluate_ghz_mixture(profile)
        if profile == "quantum":
            return ghz_quantum_value()
        raise ValueError(f"cannot evaluate GHZ profile {profile!r}")
    if kind == BB84:
        return bb84_value(profile, config)
    raise ValueError(f"unknown game kind {kind!r}")


def classical_value(kind: str, config: GameConfig) -> GameValue:
    """Best guaranteed win probability with classical equipment only."""
    if kind == THREE_BOX:
        # Rows: placements with accept-always (cancel rows are dominated:
        # the conditional value of all-cancel is 0 by definition).  The
        # cancel decision cannot depend on anything (independence check),
        # so mixing it in only scales accepted counts.  Columns: Bob's
        # box openings; inspection is weakly dominated and drops out.
        rows = []
        for place in _PLACES:
            row = []
            for bob in ({"open_a": BobMix(Fraction(1), Fraction(0))},
                        {"open_b": BobMix(Fraction(0), Fraction(1))},
                        {"inspect": BobMix(Fraction(0), Fraction(0),
                                           Fraction(1))}):
                (_, mix), = bob.items()
                val = evaluate_three_box(ClassicalAlicePlan(place, "accept"),
                                         mix, config)
                row.append(val.details["p_accept_and_found"])
            rows.append(row)
        value, mix = matrix_game_value(rows)
        desc = " + ".join(f"{w} * {(_PLACES[r])}" for r, w in sorted(mix.items()))
        return GameValue(kind=kind, label="classical value", value=value,
                         exact=True, strategy=f"mix placements: {desc}")
    if kind == MEYER:
        alice_strats = [(f, l) for f in _FLIPS for l in _FLIPS]
        rows = []
        for f, l in alice_strats:
            row = []
            for bobm in _FLIPS:
                v = evaluate_meyer(
                    ClassicalMeyerPlan(f, l),
                    MeyerBobMix(Fraction(1 if bobm == "flip" else 0),
                                Fraction(0 if bobm == "flip" else 1)),
                    config)
                row.append(Fraction(v.value))
            rows.append(row)
        value, mix = matrix_game_value(rows)
        desc = " + ".join(f"{w} * {alice_strats[r]}" for r, w in sorted(mix.items()))
        return GameValue(kind=kind, label="classical value", value=value,
                         exact=True, strategy=f"mix: {desc}")
    if kind == GHZ:
        best = None
        best_strategy = None
        for strat in enumerate_deterministic(GHZ):
            v = evaluate_ghz_tables(strat)
            if best is None or v.value > best:
                best, best_strategy = v.value, strat
        return GameValue(kind=kind, label="classical value", value=best,
                         exact=True,
                         strategy=f"best of 64 tables: {best_strategy.tables}")
    raise NotReducible(f"no exact classical reduction for {kind}")


def quantum_value(kind: str, config: GameConfig) -> GameValue:
    """Value of the canonical quantum strategy for each game."""
    if kind == THREE_BOX:
        return evaluate_three_box(canonical_quantum_plan(), BobMix(), config)
    if kind == MEYER:
        return evaluate_meyer(canonical_quantum_meyer(), MeyerBobMix(), config)
    if kind == GHZ:
        return ghz_quantum_value()
    if kind == BB84:
        return bb84_value("intercept-all", config)
    raise ValueError(f"unknown game kind {kind!r}")
