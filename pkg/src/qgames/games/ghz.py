"""The GHZ game.

A referee draws one of four question triples over {x, y} uniformly:
(x,x,x), (x,y,y), (y,x,y), (y,y,x).  Three separated players each see
only their own question and answer +1 or -1, with no communication.
The team wins when the product of answers is +1 for (x,x,x) and -1 for
the other three questions.  No classical assignment satisfies all four
constraints (their product is inconsistent), which caps classical play
at 3/4; measuring a shared three-qubit entangled state wins always.

No communication is structural here: a player's view carries only that
player's question, so no strategy can read anything else.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..rng import RandomStream
from .base import (GHZ, PLAYER1, PLAYER2, PLAYER3, REFEREE, GameConfig,
                   GameState, IllegalMove, Move, NotTerminal, OutOfTurn,
                   PayoffResult, UnknownRole)

PLAYERS = (PLAYER1, PLAYER2, PLAYER3)
ROLES = PLAYERS + (REFEREE,)

QUESTION_TRIPLES = (("x", "x", "x"), ("x", "y", "y"),
                    ("y", "x", "y"), ("y", "y", "x"))


def win_predicate(questions, answers) -> bool:
    product = answers[0] * answers[1] * answers[2]
    target = 1 if questions == ("x", "x", "x") else -1
    return product == target


@dataclass(frozen=True, slots=True)
class Answer(Move):
    value: int  # +1 | -1
    name = "answer"

    def to_wire(self):
        return {"move": self.name, "value": self.value}


@dataclass(frozen=True, slots=True, kw_only=True)
class GhzState(GameState):
    questions: tuple[str, str, str]
    answers: tuple[Optional[int], Optional[int], Optional[int]]
    win: Optional[bool]


def new(config: GameConfig, rng: RandomStream) -> GhzState:
    questions = QUESTION_TRIPLES[rng.index(len(QUESTION_TRIPLES))]
    return GhzState(kind=GHZ, stage=0, to_move=PLAYER1, terminal=False,
                    move_log=(), config=config, questions=questions,
                    answers=(None, None, None), win=None)


def legal_moves(s: GhzState, role: str):
    if role not in ROLES:
        raise UnknownRole(role)
    if s.terminal or role != s.to_move:
        return ()
    return (Answer(1), Answer(-1))


def apply(s: GhzState, role: str, m: Move, rng: RandomStream) -> GhzState:
    if role not in ROLES:
        raise UnknownRole(role)
    if s.terminal:
        raise IllegalMove("game is over")
    if role != s.to_move:
        raise OutOfTurn(f"it is {s.to_move}'s turn, not {role}'s")
    if not isinstance(m, Answer) or m.value not in (1, -1):
        raise IllegalMove("answer must be +1 or -1")
    i = PLAYERS.index(role)
    answers = s.answers[:i] + (m.value,) + s.answers[i + 1:]
    log = s.move_log + ((role, m),)
    if i < 2:
        return s.evolved(stage=s.stage + 1, to_move=PLAYERS[i + 1],
                       move_log=log, answers=answers)
    win = win_predicate(s.questions, answers)
    return s.evolved(stage=3, to_move=None, terminal=True, move_log=log,
                   answers=answers, win=win)


def slim_view(s: GhzState, role: str) -> dict:
    """Decision-relevant subset of :func:`view`."""
    if role == REFEREE:
        return {"stage": s.stage, "to_move": s.to_move, "terminal": s.terminal,
                "you": role}
    i = PLAYERS.index(role)
    return {"stage": s.stage, "to_move": s.to_move, "terminal": s.terminal,
            "you": role, "your_question": s.questions[i],
            "your_answer": s.answers[i]}


def view(s: GhzState, role: str) -> dict:
    if role not in ROLES:
        raise UnknownRole(role)
    out = {
        "game": s.kind,
        "stage": s.stage,
        "to_move": s.to_move,
        "terminal": s.terminal,
        "you": role,
        "legal_moves": [m.to_wire() for m in legal_moves(s, role)],
    }
    if role == REFEREE:
        out["questions"] = list(s.questions)
        out["answers"] = list(s.answers)
    else:
        i = PLAYERS.index(role)
        out["your_question"] = s.questions[i]
        out["your_answer"] = s.answers[i]
    if s.terminal:
        out["result"] = {"win": s.win}
    return out


def payoff(s: GhzState) -> PayoffResult:
    if not s.terminal:
        raise NotTerminal("GHZ round still in progress")
    score = 1.0 if s.win else 0.0
    by_role = {p: score for p in PLAYERS}
    by_role[REFEREE] = 0.0
    return PayoffResult(by_role)


def outcome(s: GhzState) -> dict:
    return {"accepted": True, "win": bool(s.win), "found": None}


MOVE_PARSERS = {
    "answer": lambda w: Answer(int(w["value"])),
}
