"""JSON session service for live play, driving the browser client.

Endpoints: POST /new, GET /state/{id}, POST /move/{id}, GET /solve/{id},
POST /engine-move/{id}, DELETE /session/{id}.  Sessions live in process
memory; operations within one session are serialized by a per-session lock,
different sessions run freely in parallel.  Malformed requests get 400,
unknown sessions 404, illegal moves 409 with the reason.

In HumanVsEngine mode the engine's answer is computed inside the same
/move request, so a client never observes a half-played turn.  Replaying
the history field of GET /state from the fresh board always reproduces
the reported state.
"""

from __future__ import annotations

import random
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .boards import demo_board
from .core import (
    GameGraph,
    GameState,
    Move,
    apply_move,
    is_terminal,
    legal_moves,
    new_game,
)
from .errors import GraphNimError, IllegalMoveError, StrategyError
from .graphio import graph_from_doc
from .hypercube import maybe_cube_info
from .solver import SolveConfig, best_move, solve
from .strategy import StrategyKind, TieBreak, next_move

ENGINES = {
    "optimal": StrategyKind.SOLVER_OPTIMAL,
    "p1odd": StrategyKind.P1_ODD_CUBE,
    "p2even": StrategyKind.P2_EVEN_CUBE,
    "random": StrategyKind.RANDOM_LEGAL,
}

# budget for in-request engine thinking; aborting falls back to a legal move
ENGINE_NODE_LIMIT = 2_000_000
SOLVE_NODE_LIMIT = 5_000_000


@dataclass
class Session:
    id: str
    graph: GameGraph
    state: GameState
    mode: str
    engine: StrategyKind | None
    engine_side: str | None
    rng: random.Random
    history: list[Move] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


def _bad(detail: str) -> HTTPException:
    return HTTPException(status_code=400, detail=detail)


def _state_doc(graph: GameGraph, state: GameState) -> dict:
    doc = {
        "vertices": list(graph.vertices),
        "edges": [
            {"u": graph.vertices[u], "v": graph.vertices[v], "w": state.weights[i]}
            for i, (u, v, _) in enumerate(graph.edges)
        ],
        "position": graph.vertices[state.position],
        "moveCount": state.move_count,
        "toMove": state.to_move,
        "terminal": is_terminal(state),
    }
    info = maybe_cube_info(graph)
    if info is not None:
        doc["levels"] = {graph.vertices[i]: info.levels[i]
                         for i in range(len(graph.vertices))}
    return doc


def _move_doc(graph: GameGraph, move: Move | None):
    if move is None:
        return None
    return {"to": graph.vertices[move.to], "amount": move.amount}


def _require_int(doc: dict, key: str):
    value = doc.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise _bad(f"{key} must be an integer")
    return value


def _engine_reply(session: Session) -> tuple[Move, bool]:
    """The engine's move for the current state, and whether it fell back.

    Fallback means the policy produced nothing usable (search aborted, or a
    strategy without a compliant move); the first legal move keeps the
    session playable instead of wedging it.
    """
    state = session.state
    if session.engine is StrategyKind.SOLVER_OPTIMAL:
        result = best_move(state, SolveConfig(node_limit=ENGINE_NODE_LIMIT))
        if result.move is not None:
            return result.move, False
        return legal_moves(state)[0], True
    try:
        return next_move(state, session.engine, TieBreak.SEEDED, session.rng), False
    except StrategyError:
        return legal_moves(state)[0], True


def create_app(default_graph: GameGraph | None = None) -> FastAPI:
    app = FastAPI(title="graphnim session service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        # the protocol promises 400 for malformed bodies, not 422
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    def get_session(session_id: str) -> Session:
        with registry_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"no session {session_id!r}")
        return session

    def session_body(session: Session, extra: dict | None = None) -> dict:
        body = {
            "id": session.id,
            "state": _state_doc(session.graph, session.state),
            "toMove": session.state.to_move,
            "mode": session.mode,
            "history": [_move_doc(session.graph, m) for m in session.history],
        }
        if extra:
            body.update(extra)
        return body

    def play_engine(session: Session) -> dict | None:
        """Apply one engine move if the game is still on; returns its doc."""
        if is_terminal(session.state):
            return None
        move, fallback = _engine_reply(session)
        session.state = apply_move(session.state, move)
        session.history.append(move)
        doc = _move_doc(session.graph, move)
        doc["fallback"] = fallback
        return doc

    @app.post("/new")
    def new_session(payload: dict):
        if not isinstance(payload, dict):
            raise _bad("body must be a JSON object")
        if "graph" in payload:
            try:
                graph = graph_from_doc(payload["graph"])
            except GraphNimError as exc:
                raise _bad(f"bad graph: {exc}")
        elif default_graph is not None:
            graph = default_graph
        else:
            graph = demo_board()
        mode = payload.get("mode", "HumanVsEngine")
        if mode not in ("HumanVsEngine", "HotSeat"):
            raise _bad(f"unknown mode {mode!r}")
        engine = None
        engine_side = None
        if mode == "HumanVsEngine":
            name = payload.get("engine", "optimal")
            if name not in ENGINES:
                raise _bad(f"unknown engine {name!r}")
            engine = ENGINES[name]
            human_first = payload.get("humanFirst", True)
            if not isinstance(human_first, bool):
                raise _bad("humanFirst must be a boolean")
            engine_side = "P2" if human_first else "P1"
        seed = payload.get("seed", 0)
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise _bad("seed must be an integer")

        session = Session(
            id=uuid.uuid4().hex[:12],
            graph=graph,
            state=new_game(graph),
            mode=mode,
            engine=engine,
            engine_side=engine_side,
            rng=random.Random(seed),
        )
        with registry_lock:
            sessions[session.id] = session
        with session.lock:
            extra = {}
            if engine_side == "P1":
                extra["engineMove"] = play_engine(session)
            return session_body(session, extra)

    @app.get("/state/{session_id}")
    def get_state(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return session_body(session)

    @app.post("/move/{session_id}")
    def post_move(session_id: str, payload: dict):
        session = get_session(session_id)
        if not isinstance(payload, dict):
            raise _bad("body must be a JSON object")
        label = payload.get("to")
        if not isinstance(label, str):
            raise _bad("to must be a vertex label string")
        amount = _require_int(payload, "amount")
        with session.lock:
            to = session.graph.index_of(label)
            if to is None:
                raise _bad(f"unknown vertex {label!r}")
            if is_terminal(session.state):
                raise HTTPException(status_code=409, detail="game is over")
            if session.engine_side is not None and session.state.to_move == session.engine_side:
                raise HTTPException(status_code=409, detail="engine to move")
            move = Move(to, amount)
            try:
                session.state = apply_move(session.state, move)
            except IllegalMoveError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            session.history.append(move)
            extra = {"humanMove": _move_doc(session.graph, move), "engineMove": None}
            if session.engine_side is not None:
                extra["engineMove"] = play_engine(session)
            return session_body(session, extra)

    @app.post("/engine-move/{session_id}")
    def post_engine_move(session_id: str):
        session = get_session(session_id)
        with session.lock:
            if is_terminal(session.state):
                raise HTTPException(status_code=409, detail="game is over")
            if session.engine is None:
                raise HTTPException(status_code=409, detail="session has no engine")
            doc = play_engine(session)
            return session_body(session, {"engineMove": doc})

    @app.get("/solve/{session_id}")
    def get_solve(session_id: str):
        session = get_session(session_id)
        with session.lock:
            result = solve(session.state, SolveConfig(node_limit=SOLVE_NODE_LIMIT))
            if result.aborted:
                return {"aborted": True, "abortReason": result.abort_reason,
                        "nodesExpanded": result.nodes_expanded}
            return {
                "outcome": result.outcome.value,
                "bestMove": _move_doc(session.graph, result.best_move),
                "nodesExpanded": result.nodes_expanded,
                "aborted": False,
            }

    @app.delete("/session/{session_id}")
    def delete_session(session_id: str):
        with registry_lock:
            if session_id not in sessions:
                raise HTTPException(status_code=404, detail=f"no session {session_id!r}")
            del sessions[session_id]
        return {"deleted": True}

    return app
