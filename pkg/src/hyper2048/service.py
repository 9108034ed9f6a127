"""Interactive session service: REST for actions, WebSocket for the event stream.

A session wraps one game; the human plays one role (or observes) and the
built-in policies play the other side, responding synchronously within the
human's request.  All mutations of a session are serialized under its lock
and increment the version counter (= number of recorded events), so clients
can resynchronize from GET state + version.  Boards and events use the same
JSON schemas as transcripts.
"""

from __future__ import annotations

import random
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .board import apply_move, board_to_json, is_game_over
from .geometry import Move, ShapeError, snake_path, validate_shape
from .match import GameState, default_turn_cap, new_game
from .strategies import (
    BoardFullError,
    NoLegalMoveError,
    Placement,
    PlayerPolicyState,
    StrategyDecision,
    adversary_respond,
    check_mode,
    mode_label,
    open_with_rng,
    player_choose,
)

MAX_SERVICE_DIMENSIONS = 3

HUMAN_ROLES = ("player", "computer", "observer")


class ApiError(Exception):
    def __init__(self, status: int, code: str, detail: str):
        super().__init__(detail)
        self.status = status
        self.code = code
        self.detail = detail


@dataclass
class Session:
    id: str
    state: GameState
    human_role: str
    events: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def version(self) -> int:
        return len(self.events)

    def snapshot(self) -> dict:
        return {
            "id": self.id,
            "version": self.version,
            "shape": list(self.state.board.shape),
            "mode": mode_label(self.state.board.shape, self.state.mode),
            "seed": self.state.seed,
            "human_role": self.human_role,
            "to_act": self.state.to_act,
            "turn": self.state.turn,
            "over": is_game_over(self.state.board),
            "board": board_to_json(self.state.board),
        }


def _apply_decision(session: Session, actor: str, decision: StrategyDecision) -> None:
    state = session.state
    if decision.placement is not None:
        placement = decision.placement
        state.board = state.board.with_tile(placement.pos, placement.exp)
        action = {"type": "place", "pos": list(placement.pos), "exp": placement.exp}
        state.to_act = "player"
    else:
        state.board = apply_move(state.board, decision.move).board_after
        state.last_move = decision.move
        action = {"type": "move", "axis": decision.move.axis, "sign": decision.move.sign}
        state.to_act = "computer"
    state.turn += 1
    event = {
        "turn": state.turn,
        "actor": actor,
        "action": action,
        "rationale": decision.rationale,
        "board_after": board_to_json(state.board),
        "version": session.version + 1,
    }
    state.history.append(event)
    session.events.append(event)


def _machine_decision(session: Session) -> StrategyDecision | None:
    """The built-in policy's decision for the side currently to act."""
    state = session.state
    if is_game_over(state.board):
        return None
    if state.to_act == "computer":
        if not state.board.cells:
            return StrategyDecision(
                rationale="step1", placement=open_with_rng(state.board.shape, state.rng)
            )
        return adversary_respond(state.board, state.last_move, state.mode, rng=state.rng)
    try:
        return player_choose(state.board, state.policy)
    except NoLegalMoveError:
        return None


def create_app(transcript_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="hyper2048 game service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    app.state.sessions = sessions

    if transcript_dir is not None:
        transcript_dir.mkdir(parents=True, exist_ok=True)

    def persist(session: Session, line: dict) -> None:
        if transcript_dir is None:
            return
        with open(transcript_dir / f"{session.id}.jsonl", "a", encoding="utf-8") as fh:
            import json

            fh.write(json.dumps(line, sort_keys=True) + "\n")

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(status_code=exc.status, content={"error": exc.code, "detail": exc.detail})

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise ApiError(404, "session-not-found", f"no session {session_id}")
        return session

    def machine_turns(session: Session) -> None:
        """Let the machine act until it is the human's turn (or game over)."""
        human = session.human_role
        while True:
            state = session.state
            if human == "player" and state.to_act == "player":
                return
            if human == "computer" and state.to_act == "computer":
                return
            decision = _machine_decision(session)
            if decision is None:
                return
            _apply_decision(session, state.to_act, decision)
            persist(session, session.events[-1])

    @app.post("/games", status_code=201)
    def create_game(body: dict):
        try:
            shape = validate_shape(body.get("shape", (4, 4)))
        except (ShapeError, TypeError) as exc:
            raise ApiError(400, "invalid-shape", str(exc))
        if len(shape) > MAX_SERVICE_DIMENSIONS:
            raise ApiError(
                400,
                "unsupported-dimension",
                f"the service renders at most {MAX_SERVICE_DIMENSIONS} dimensions, got {len(shape)}",
            )
        human_role = body.get("human_role", "player")
        if human_role not in HUMAN_ROLES:
            raise ApiError(400, "invalid-role", f"human_role must be one of {HUMAN_ROLES}")
        mode = body.get("mode", "paper")
        try:
            check_mode(mode)
        except ValueError as exc:
            raise ApiError(400, "invalid-mode", str(exc))
        seed = int(body.get("seed", 0))
        session = Session(id=uuid.uuid4().hex, state=new_game(shape, mode, seed), human_role=human_role)
        sessions[session.id] = session
        with session.lock:
            # Same JSONL layout as harness transcripts: header line, then events.
            persist(
                session,
                {
                    "shape": list(shape),
                    "mode": mode_label(shape, mode),
                    "seed": seed,
                    "policy_version": "1",
                    "session": session.id,
                },
            )
            if human_role == "player":
                machine_turns(session)
            elif human_role == "observer":
                cap = int(body.get("max_turns", default_turn_cap(shape)))
                while session.state.turn < cap:
                    decision = _machine_decision(session)
                    if decision is None:
                        break
                    _apply_decision(session, session.state.to_act, decision)
                    persist(session, session.events[-1])
        return session.snapshot()

    @app.get("/games/{session_id}")
    def get_game(session_id: str):
        session = get_session(session_id)
        with session.lock:  # a snapshot must not interleave with a mutation
            return session.snapshot()

    @app.get("/games/{session_id}/events")
    def get_events(session_id: str, since: int = 0):
        session = get_session(session_id)
        with session.lock:
            return {"events": session.events[since:], "version": session.version}

    @app.post("/games/{session_id}/move")
    def post_move(session_id: str, body: dict):
        session = get_session(session_id)
        with session.lock:
            state = session.state
            if session.human_role != "player":
                raise ApiError(409, "not-your-turn", "this session's human does not play the mover")
            if state.to_act != "player":
                raise ApiError(409, "not-your-turn", "it is the computer's turn")
            try:
                move = Move(int(body["axis"]), int(body["sign"]))
                if move.sign not in (-1, 1) or not 0 <= move.axis < len(state.board.shape):
                    raise ValueError
            except (KeyError, TypeError, ValueError):
                raise ApiError(400, "invalid-action", "move body must be {axis: int, sign: +-1}")
            outcome = apply_move(state.board, move)
            if not outcome.changed:
                raise ApiError(409, "illegal-action", f"move {move} does not change the board")
            _apply_decision(session, "player", StrategyDecision(rationale="human", move=move))
            persist(session, session.events[-1])
            machine_turns(session)
        return session.snapshot()

    @app.post("/games/{session_id}/place")
    def post_place(session_id: str, body: dict):
        session = get_session(session_id)
        with session.lock:
            state = session.state
            if session.human_role != "computer":
                raise ApiError(409, "not-your-turn", "this session's human does not place tiles")
            if state.to_act != "computer":
                raise ApiError(409, "not-your-turn", "it is the player's turn")
            try:
                pos = tuple(int(c) for c in body["pos"])
                exp = int(body["exp"])
            except (KeyError, TypeError, ValueError):
                raise ApiError(400, "invalid-action", "place body must be {pos: [...], exp: 1|2}")
            if exp not in (1, 2):
                raise ApiError(409, "illegal-action", "spawned tiles must have exponent 1 or 2")
            try:
                if state.board.cells.get(pos) is not None:
                    raise ApiError(409, "illegal-action", f"cell {pos} is occupied")
                placement = Placement(pos, exp)
                state.board.with_tile(pos, exp)  # validates bounds
            except ValueError as exc:
                raise ApiError(409, "illegal-action", str(exc))
            _apply_decision(session, "computer", StrategyDecision(rationale="human", placement=placement))
            persist(session, session.events[-1])
            machine_turns(session)
        return session.snapshot()

    @app.get("/games/{session_id}/hint")
    def get_hint(session_id: str):
        session = get_session(session_id)
        with session.lock:
            state = session.state
            if is_game_over(state.board):
                raise ApiError(409, "game-over", "the game is over")
            if state.to_act == "computer":
                if not state.board.cells:
                    rng = random.Random()
                    rng.setstate(state.rng.getstate())
                    decision = StrategyDecision(
                        rationale="step1", placement=open_with_rng(state.board.shape, rng)
                    )
                else:
                    rng = random.Random()
                    rng.setstate(state.rng.getstate())
                    try:
                        decision = adversary_respond(state.board, state.last_move, state.mode, rng=rng)
                    except BoardFullError as exc:
                        raise ApiError(409, "game-over", str(exc))
            else:
                try:
                    decision = player_choose(
                        state.board, PlayerPolicyState(current_m=state.policy.current_m)
                    )
                except NoLegalMoveError as exc:
                    raise ApiError(409, "game-over", str(exc))
            return {"version": session.version, **decision.to_json()}

    @app.get("/games/{session_id}/snake")
    def get_snake(session_id: str):
        session = get_session(session_id)
        path = snake_path(session.state.board.shape)
        return {"path": [list(p) for p in path]}

    @app.websocket("/games/{session_id}/stream")
    async def stream(websocket: WebSocket, session_id: str):
        import asyncio

        session = sessions.get(session_id)
        await websocket.accept()
        if session is None:
            await websocket.send_json({"type": "error", "error": "session-not-found", "detail": session_id})
            await websocket.close()
            return
        try:
            since = int(websocket.query_params.get("since", 0))
        except ValueError:
            since = 0
        try:
            await websocket.send_json({"type": "snapshot", "session": session.snapshot()})
            cursor = since
            while True:
                events = session.events
                while cursor < len(events):
                    await websocket.send_json({"type": "event", **events[cursor]})
                    cursor += 1
                if is_game_over(session.state.board):
                    await websocket.send_json({"type": "over", "version": session.version})
                    break
                await asyncio.sleep(0.05)
        except WebSocketDisconnect:
            return

    return app


app = create_app()
