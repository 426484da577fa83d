"""FastAPI application exposing sessions over HTTP+JSON.

Eval requests against one session serialize on its lock, so concurrent
clients see the same result order as some serial execution.  Bodies over
the payload limit get 413 before any parsing.  Errors share one JSON
shape: ``{"error": code, "message": text, "span": [start, end] | null}``.
"""
from __future__ import annotations

import os

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import __version__
from ..document import join_cells, split_cells
from ..errors import (
    CapacityExceeded,
    MathparError,
    PayloadTooLarge,
    SessionNotFound,
)
from ..session import eval_cell, reset_session, set_unknown
from .schemas import (
    CellResultModel,
    EvalRequest,
    EvalResponse,
    HealthResponse,
    JoinRequest,
    JoinResponse,
    SessionInfo,
    SessionSettings,
    SplitRequest,
    SplitResponse,
)
from .store import SessionStore

MAX_BODY_BYTES = 1 << 20

_STATUS = {
    SessionNotFound: 404,
    PayloadTooLarge: 413,
    CapacityExceeded: 429,
}


def _error_response(err: MathparError, status: int) -> JSONResponse:
    body = {"error": err.code, "message": err.message, "span": None}
    if err.span is not None:
        body["span"] = list(err.span.as_tuple())
    return JSONResponse(status_code=status, content=body)


def create_app(store: SessionStore | None = None) -> FastAPI:
    if store is None:
        store = SessionStore(
            ttl_minutes=float(os.environ.get("MATHPAR_SESSION_TTL_MINUTES", "60")),
            max_sessions=int(os.environ.get("MATHPAR_MAX_SESSIONS", "256")),
        )

    app = FastAPI(title="mathpar", version=__version__)
    app.state.store = store

    # browser notebooks may be served from a different origin than the API
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.middleware("http")
    async def limit_body(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and length.isdigit() and int(length) > MAX_BODY_BYTES:
            return _error_response(
                PayloadTooLarge(f"request body over {MAX_BODY_BYTES} bytes"), 413
            )
        body = await request.body()
        if len(body) > MAX_BODY_BYTES:
            return _error_response(
                PayloadTooLarge(f"request body over {MAX_BODY_BYTES} bytes"), 413
            )
        return await call_next(request)

    @app.exception_handler(MathparError)
    async def mathpar_error(request: Request, err: MathparError):
        return _error_response(err, _STATUS.get(type(err), 400))

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, err: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"error": "validation-error", "message": str(err), "span": None},
        )

    def _apply_settings(entry, settings: SessionSettings | None) -> None:
        if settings is None:
            return
        if settings.precision is not None:
            entry.env.precision = settings.precision
        if settings.unknown is not None:
            set_unknown(entry.env, settings.unknown)

    @app.get("/health", response_model=HealthResponse)
    async def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/sessions", response_model=SessionInfo, status_code=201)
    async def create_session(settings: SessionSettings | None = None) -> SessionInfo:
        entry = store.create()
        try:
            _apply_settings(entry, settings)
        except MathparError:
            store.delete(entry.session_id)
            raise
        return SessionInfo.from_env(entry.session_id, entry.env)

    @app.get("/sessions/{session_id}", response_model=SessionInfo)
    async def get_session(session_id: str) -> SessionInfo:
        entry = store.get(session_id)
        with entry.lock:
            return SessionInfo.from_env(entry.session_id, entry.env)

    @app.delete("/sessions/{session_id}", status_code=204)
    async def delete_session(session_id: str) -> Response:
        store.delete(session_id)
        return Response(status_code=204)

    @app.post("/sessions/{session_id}/eval", response_model=EvalResponse)
    def eval_source(session_id: str, request: EvalRequest) -> EvalResponse:
        entry = store.get(session_id)
        with entry.lock:
            results = [
                eval_cell(entry.env, cell) for cell in split_cells(request.source)
            ]
        return EvalResponse(
            results=[CellResultModel.from_result(r) for r in results]
        )

    @app.post("/sessions/{session_id}/reset", response_model=SessionInfo)
    async def reset(session_id: str) -> SessionInfo:
        entry = store.get(session_id)
        with entry.lock:
            reset_session(entry.env)
            return SessionInfo.from_env(entry.session_id, entry.env)

    @app.post("/sessions/{session_id}/settings", response_model=SessionInfo)
    async def settings(session_id: str, body: SessionSettings) -> SessionInfo:
        entry = store.get(session_id)
        with entry.lock:
            _apply_settings(entry, body)
            return SessionInfo.from_env(entry.session_id, entry.env)

    @app.post("/split", response_model=SplitResponse)
    async def split(request: SplitRequest) -> SplitResponse:
        return SplitResponse(cells=split_cells(request.source))

    @app.post("/join", response_model=JoinResponse)
    async def join(request: JoinRequest) -> JoinResponse:
        return JoinResponse(source=join_cells(request.cells))

    return app
