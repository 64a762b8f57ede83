"""FastAPI application exposing the compose/inspect/render/export workflow.

Error bodies are always ``{"code": ..., "message": ...}``: 400 for invalid
input, 404 for unknown sessions, 409 for configuration conflicts such as a
missing sample clip.
"""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from ..exchange import ComposeConfig, score_to_csv
from ..melodygen import InvalidVoicesError
from ..render import MissingSampleError, RenderConfig, render_score, wav_bytes
from ..textparse import EmptyInputError
from .schemas import (
    ConfigUpdateRequest,
    ErrorOut,
    HealthOut,
    ScoreUpdateOut,
    SessionCreateRequest,
    SessionDetailOut,
    SessionOut,
    config_to_schema,
    events_to_schema,
    row_to_schema,
    score_to_schema,
)
from .store import Session, SessionStore, UnknownSessionError


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _session_out(session: Session) -> SessionOut:
    comp = session.composition
    return SessionOut(
        id=session.id,
        created_at=session.created_at,
        text=comp.text,
        block_count=len(comp.block_set.blocks),
        log=list(comp.log),
        row=row_to_schema(comp.row),
        score=score_to_schema(comp.score, comp.config.render.tick_seconds),
        config=config_to_schema(comp.config),
    )


def _session_detail(session: Session) -> SessionDetailOut:
    return SessionDetailOut(
        **_session_out(session).model_dump(),
        events=events_to_schema(session.composition),
    )


def create_app(
    samples_dir: str | Path | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="padberg composer service", docs_url="/api/docs")
    store = SessionStore()
    samples = Path(samples_dir) if samples_dir is not None else None

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError) -> JSONResponse:
        body = ErrorOut(code=exc.code, message=exc.message)
        return JSONResponse(status_code=exc.status, content=body.model_dump())

    @app.exception_handler(RequestValidationError)
    async def handle_validation(
        request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        body = ErrorOut(code="invalid_request", message=str(exc.errors()))
        return JSONResponse(status_code=400, content=body.model_dump())

    def get_session(session_id: str) -> Session:
        try:
            return store.get(session_id)
        except UnknownSessionError:
            raise ApiError(404, "unknown_session", f"no session {session_id!r}")

    def apply_update(
        current: ComposeConfig, update: ConfigUpdateRequest
    ) -> ComposeConfig:
        render = current.render
        try:
            if update.tick_seconds is not None:
                render = replace(render, tick_seconds=update.tick_seconds)
        except ValueError as exc:
            raise ApiError(400, "invalid_config", str(exc))
        if update.instrument is not None:
            if update.instrument != "sine" and not update.instrument.startswith(
                "sample:"
            ):
                raise ApiError(
                    400,
                    "invalid_config",
                    f"instrument must be 'sine' or 'sample:<name>', "
                    f"got {update.instrument!r}",
                )
            render = replace(render, instrument=update.instrument)
        name = render.sample_name
        if name is not None:
            clip = (samples / f"{name}.wav") if samples is not None else None
            if clip is None or not clip.is_file():
                raise ApiError(
                    409, "missing_sample", f"sample clip {name!r} is not available"
                )
        config = replace(
            current,
            voices=update.voices if update.voices is not None else current.voices,
            mode=update.mode if update.mode is not None else current.mode,
            repeats=update.repeats if update.repeats is not None else current.repeats,
            render=render,
        )
        if config.voices not in (1, 2, 3):
            raise ApiError(400, "invalid_config", "voices must be 1, 2 or 3")
        if config.repeats < 1:
            raise ApiError(400, "invalid_config", "repeats must be positive")
        return config

    @app.get("/api/health", response_model=HealthOut)
    def health() -> HealthOut:
        return HealthOut(status="ok")

    @app.post("/api/sessions", response_model=SessionOut, status_code=201)
    def create_session(request: SessionCreateRequest) -> SessionOut:
        config = ComposeConfig(render=RenderConfig(assets_dir=samples))
        try:
            session = store.create(request.text, config)
        except EmptyInputError as exc:
            raise ApiError(400, "empty_input", str(exc))
        return _session_out(session)

    @app.get("/api/sessions/{session_id}", response_model=SessionDetailOut)
    def get_session_state(session_id: str) -> SessionDetailOut:
        return _session_detail(get_session(session_id))

    @app.put("/api/sessions/{session_id}/config", response_model=ScoreUpdateOut)
    def update_config(session_id: str, update: ConfigUpdateRequest) -> ScoreUpdateOut:
        session = get_session(session_id)
        config = apply_update(session.composition.config, update)
        try:
            session = store.reconfigure(session_id, config)
        except InvalidVoicesError as exc:
            raise ApiError(400, "invalid_config", str(exc))
        comp = session.composition
        return ScoreUpdateOut(
            id=session.id,
            score=score_to_schema(comp.score, comp.config.render.tick_seconds),
            config=config_to_schema(comp.config),
        )

    @app.post("/api/sessions/{session_id}/render")
    def render_session(session_id: str) -> Response:
        session = get_session(session_id)
        with store.lock(session_id):
            comp = session.composition
            try:
                buf = render_score(comp.score, comp.config.render)
            except MissingSampleError as exc:
                raise ApiError(409, "missing_sample", str(exc))
        return Response(content=wav_bytes(buf), media_type="audio/wav")

    @app.get("/api/sessions/{session_id}/export.csv")
    def export_session_csv(session_id: str, monophonic: bool = True) -> Response:
        session = get_session(session_id)
        csv_text = score_to_csv(session.composition.score, monophonic=monophonic)
        return Response(content=csv_text, media_type="text/csv")

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
