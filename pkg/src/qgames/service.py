"""HTTP sessions for live play: role tokens, filtered views, engine turns.

A session binds one game to a set of human roles; every other playing
role is driven by an engine policy.  A role token authorizes exactly one
role, and every byte a role receives is generated from that role's view
plus public aggregates, so hidden state cannot leak by construction.

Series mode (the default) starts a fresh trial whenever one ends and
keeps a running scoreboard; the trusted-party log of a session becomes
readable once the session is closed.
"""
from __future__ import annotations

import json
import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, Header, HTTPException
from pydantic import BaseModel

from . import games
from .games.base import (GameConfig, GameState, IllegalMove, OutOfTurn,
                         UnknownRole)
from .harness import wilson95
from .policies import StrategyProfile, build_profile
from .rng import RandomStream


class CreateSessionRequest(BaseModel):
    game: str
    config: dict = {}
    human_roles: list[str]
    seed: Optional[int] = None
    mode: str = "series"          # "series" | "single"
    opponents: dict = {}          # engine policy specs per profile slot


class MoveRequest(BaseModel):
    move: dict
    # Optional guard: reject the move when the trial has already advanced
    # (stale client, double click).  Series mode starts trials without the
    # client's involvement, so the index is how a client pins "this" trial.
    trial_index: Optional[int] = None


@dataclass
class Scoreboard:
    trials: int = 0
    accepted: int = 0
    wins_accepted: int = 0

    def public(self) -> dict:
        lo, hi = wilson95(self.wins_accepted, self.accepted)
        return {
            "trials": self.trials,
            "accepted": self.accepted,
            "wins_among_accepted": self.wins_accepted,
            "conditional_win_rate": (self.wins_accepted / self.accepted
                                     if self.accepted else 0.0),
            "wilson95": [lo, hi],
        }


@dataclass
class Session:
    session_id: str
    kind: str
    config: GameConfig
    seed: int
    mode: str
    human_roles: frozenset[str]
    profile: StrategyProfile
    rng: RandomStream
    state: GameState
    created_at: float = field(default_factory=time.time)
    trial_index: int = 0
    scoreboard: Scoreboard = field(default_factory=Scoreboard)
    tokens: dict[str, str] = field(default_factory=dict)   # role -> token
    by_token: dict[str, str] = field(default_factory=dict)  # token -> role
    trusted_log: list = field(default_factory=list)
    closed: bool = False
    lock: threading.Lock = field(default_factory=threading.Lock)
    persist_path: Optional[Path] = None


def _trial_record(session: Session) -> dict:
    s = session.state
    outcome = games.outcome(s)
    payoffs = games.payoff(s).by_role
    record: dict[str, Any] = {
        "trial_index": session.trial_index,
        "moves": [{"role": role, **move.to_wire()} for role, move in s.move_log],
        "accepted": outcome["accepted"],
        "found": outcome["found"],
        "win": outcome["win"],
        "payoffs": payoffs,
    }
    disturbed = getattr(s, "disturbed", None)
    if disturbed is not None:
        # The drawn disturbance branch is trusted-party information only.
        record["disturbed"] = disturbed
    return record


def _advance(session: Session) -> None:
    """Let engine roles move until a human's turn, then handle trial ends."""
    while not session.closed:
        state = session.state
        if state.terminal:
            record = _trial_record(session)
            session.trusted_log.append(record)
            outcome = games.outcome(state)
            session.scoreboard.trials += 1
            if outcome["accepted"]:
                session.scoreboard.accepted += 1
                if outcome["win"]:
                    session.scoreboard.wins_accepted += 1
            if session.persist_path is not None:
                with open(session.persist_path, "a") as fh:
                    fh.write(json.dumps(record) + "\n")
            if session.mode == "single":
                session.closed = True
                return
            session.trial_index += 1
            session.rng.reset_trial(session.trial_index)
            session.state = games.new_game(session.kind, session.config,
                                           session.rng)
            session.profile.begin_trial(session.rng)
            continue
        role = state.to_move
        if role is None or role in session.human_roles:
            return
        policy = session.profile.policies[role]
        move = policy.choose(games.policy_view(state, role), session.rng)
        session.state = games.apply_move(state, role, move, session.rng)


def _view_payload(session: Session, role: str) -> dict:
    """Everything a role may see: its view plus public aggregates."""
    return {
        "session_id": session.session_id,
        "trial_index": session.trial_index,
        "turn": session.state.to_move,
        "closed": session.closed,
        "mode": session.mode,
        "scoreboard": session.scoreboard.public(),
        "view": games.view(session.state, role),
    }


def create_app(persist_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="qgames session service")
    # The browser client is served as static files from anywhere local;
    # tokens, not origins, are the access control here.
    from fastapi.middleware.cors import CORSMiddleware
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()
    persist_root = Path(persist_dir) if persist_dir else None
    if persist_root is not None:
        persist_root.mkdir(parents=True, exist_ok=True)

    def _session(session_id: str) -> Session:
        try:
            return sessions[session_id]
        except KeyError:
            raise HTTPException(404, f"no session {session_id}")

    def _role_for(session: Session, token: Optional[str]) -> str:
        if token is None or token not in session.by_token:
            raise HTTPException(403, "bad or missing role token")
        return session.by_token[token]

    @app.post("/api/v1/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        try:
            config = GameConfig.from_dict(req.config)
            roles = games.roles(req.game)
        except (TypeError, ValueError, games.GameError) as exc:
            raise HTTPException(422, f"bad session spec: {exc}")
        human = frozenset(req.human_roles)
        if not human <= set(roles):
            raise HTTPException(422, f"unknown roles {sorted(human - set(roles))}")
        if req.mode not in ("series", "single"):
            raise HTTPException(422, f"unknown mode {req.mode!r}")
        try:
            profile = build_profile(req.game, config, **req.opponents)
        except (TypeError, ValueError) as exc:
            raise HTTPException(422, f"bad opponent spec: {exc}")
        seed = req.seed if req.seed is not None \
            else secrets.randbits(32)
        session_id = secrets.token_urlsafe(9)
        rng = RandomStream(seed, 0)
        state = games.new_game(req.game, config, rng)
        profile.begin_trial(rng)
        session = Session(
            session_id=session_id, kind=req.game, config=config, seed=seed,
            mode=req.mode, human_roles=human, profile=profile, rng=rng,
            state=state)
        for role in sorted(human):
            token = secrets.token_urlsafe(16)
            session.tokens[role] = token
            session.by_token[token] = role
        if persist_root is not None:
            session.persist_path = persist_root / f"{session_id}.jsonl"
        with session.lock:
            _advance(session)
        with registry_lock:
            sessions[session_id] = session
        return {"session_id": session_id, "seed": seed,
                "tokens": dict(session.tokens)}

    @app.get("/api/v1/sessions/{session_id}/view")
    def get_view(session_id: str,
                 x_role_token: Optional[str] = Header(default=None)):
        session = _session(session_id)
        role = _role_for(session, x_role_token)
        with session.lock:
            return _view_payload(session, role)

    @app.post("/api/v1/sessions/{session_id}/moves")
    def post_move(session_id: str, req: MoveRequest,
                  x_role_token: Optional[str] = Header(default=None)):
        session = _session(session_id)
        role = _role_for(session, x_role_token)
        try:
            move = games.parse_move(session.kind, req.move)
        except IllegalMove as exc:
            raise HTTPException(422, str(exc))
        with session.lock:
            if session.closed:
                raise HTTPException(409, "session is closed")
            if req.trial_index is not None and \
                    req.trial_index != session.trial_index:
                raise HTTPException(
                    409, f"trial {req.trial_index} is over; "
                         f"current trial is {session.trial_index}")
            try:
                session.state = games.apply_move(session.state, role, move,
                                                 session.rng)
            except OutOfTurn as exc:
                raise HTTPException(409, str(exc))
            except UnknownRole as exc:
                raise HTTPException(422, str(exc))
            except IllegalMove as exc:
                raise HTTPException(422, str(exc))
            _advance(session)
            return _view_payload(session, role)

    @app.post("/api/v1/sessions/{session_id}/close")
    def close_session(session_id: str,
                      x_role_token: Optional[str] = Header(default=None)):
        session = _session(session_id)
        _role_for(session, x_role_token)
        with session.lock:
            session.closed = True
            return {"session_id": session_id, "closed": True,
                    "scoreboard": session.scoreboard.public()}

    @app.get("/api/v1/sessions/{session_id}/result")
    def get_result(session_id: str):
        session = _session(session_id)
        with session.lock:
            if not session.closed:
                raise HTTPException(409, "session still open; close it first")
            return {
                "session_id": session_id,
                "game": session.kind,
                "seed": session.seed,
                "scoreboard": session.scoreboard.public(),
                "trials": list(session.trusted_log),
            }

    return app


app = create_app()
