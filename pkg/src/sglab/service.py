"""HTTP session service for the beam lab.

Each session holds one beam stack and the undo history of the commands
that built it.  Sessions are mutually exclusive internally (two
commands to the same session never interleave) while distinct sessions
proceed in parallel, and a session idle longer than its time-to-live is
dropped.

Endpoints, all JSON unless noted:

    POST /sessions                  create a session; returns {"id": ...}
    GET  /sessions/{sid}            the current stack
    POST /sessions/{sid}/commands   apply one command object, e.g.
                                    {"kind": "split", "axis": "z"} or
                                    {"kind": "bfield", "theta": 1.5708,
                                     "phi": 0, "omega": 6.2832}
    POST /sessions/{sid}/undo       revert the last command
    POST /sessions/{sid}/script     run script text from scratch; the
                                    session takes the script's end state
    GET  /healthz                   liveness probe, plain text "ok"

The machine-readable API description is served at /spec.  A stack is
rendered as {"beams": [{"intensity": ...}, ...]} from bottom to top,
with full-precision floats; rounding is a client concern.  Errors come
back as {"error": message, "code": tag}: 400 for a malformed command,
404 for an unknown session, 409 for a command the current stack cannot
honor (codes "no-beam", "need-two-beams", "nothing-to-undo", ...).
"""

import json
import os
import threading
import time
import uuid
from contextlib import asynccontextmanager
from dataclasses import dataclass, field

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from starlette.concurrency import run_in_threadpool

from . import __version__
from .beamstack import BeamStack, BeamStackError, empty_stack, intensities
from .script import (
    Command,
    CommandError,
    ParseError,
    ScriptRuntimeError,
    apply_command,
    command_from_dict,
    command_to_dict,
    evaluate,
    parse,
)

DEFAULT_TTL = 24 * 3600.0


class ApiError(Exception):
    """An error response: HTTP status, human message, machine code."""

    def __init__(self, status: int, message: str, code: str):
        super().__init__(message)
        self.status = status
        self.message = message
        self.code = code


@dataclass
class Session:
    """One client's stack plus its undo history.

    ``history`` pairs each applied command with the stack it replaced,
    so undo is a pop.  ``lock`` serializes all mutation.
    """

    sid: str
    created_at: float
    last_used: float
    stack: BeamStack = field(default_factory=empty_stack)
    history: list[tuple[Command, BeamStack]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """Thread-safe session map with idle expiry.

    Liveness uses a monotonic clock, so a snapshot/restart resets idle
    time rather than expiring everything at once.
    """

    def __init__(self, ttl: float = DEFAULT_TTL):
        self.ttl = ttl
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self) -> Session:
        now = time.monotonic()
        session = Session(sid=uuid.uuid4().hex, created_at=time.time(), last_used=now)
        with self._lock:
            self._sweep(now)
            self._sessions[session.sid] = session
        return session

    def get(self, sid: str) -> Session:
        """Look up a live session and refresh its idle clock."""
        now = time.monotonic()
        with self._lock:
            session = self._sessions.get(sid)
            if session is not None and now - session.last_used > self.ttl:
                del self._sessions[sid]
                session = None
            if session is None:
                raise KeyError(sid)
            session.last_used = now
            return session

    def _sweep(self, now: float) -> None:
        dead = [s for s, v in self._sessions.items() if now - v.last_used > self.ttl]
        for sid in dead:
            del self._sessions[sid]

    def save(self, path: str) -> None:
        """Write every live session's command history to ``path``."""
        with self._lock:
            sessions = list(self._sessions.values())
        payload = {
            "sessions": [
                {
                    "id": s.sid,
                    "created_at": s.created_at,
                    "commands": [command_to_dict(c) for c, _ in s.history],
                }
                for s in sessions
            ]
        }
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="utf-8") as handle:
            json.dump(payload, handle)
        os.replace(tmp, path)

    def load(self, path: str) -> None:
        """Rebuild sessions from a snapshot by replaying their commands."""
        with open(path, encoding="utf-8") as handle:
            payload = json.load(handle)
        now = time.monotonic()
        for entry in payload.get("sessions", []):
            session = Session(
                sid=entry["id"], created_at=entry["created_at"], last_used=now
            )
            for data in entry["commands"]:
                cmd = command_from_dict(data)
                session.history.append((cmd, session.stack))
                session.stack = apply_command(session.stack, cmd)
            with self._lock:
                self._sessions[session.sid] = session


def _view(stack: BeamStack) -> dict:
    return {"beams": [{"intensity": v} for v in intensities(stack)]}


def create_app(ttl: float = DEFAULT_TTL, snapshot_path: str | None = None) -> FastAPI:
    """Build the application; see the module docstring for the API."""
    store = SessionStore(ttl=ttl)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        if snapshot_path and os.path.exists(snapshot_path):
            store.load(snapshot_path)
        yield
        if snapshot_path:
            store.save(snapshot_path)

    app = FastAPI(
        title="sg beam lab",
        version=__version__,
        openapi_url="/spec",
        lifespan=lifespan,
    )
    app.state.store = store

    # The browser bench is served as static files from wherever, so the
    # API answers any origin.  There is no auth to leak.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(
            {"error": exc.message, "code": exc.code}, status_code=exc.status
        )

    @app.exception_handler(RequestValidationError)
    async def _bad_body(request: Request, exc: RequestValidationError):
        return JSONResponse(
            {"error": "request body is not a command object", "code": "bad-command"},
            status_code=400,
        )

    def _session(sid: str) -> Session:
        try:
            return store.get(sid)
        except KeyError:
            raise ApiError(404, f"no session {sid!r}", "no-such-session") from None

    @app.post("/sessions")
    def create_session() -> dict:
        return {"id": store.create().sid}

    @app.get("/sessions/{sid}")
    def show_session(sid: str) -> dict:
        session = _session(sid)
        with session.lock:
            return _view(session.stack)

    @app.post("/sessions/{sid}/commands")
    def post_command(sid: str, body: dict = Body()) -> dict:
        session = _session(sid)
        try:
            cmd = command_from_dict(body)
        except CommandError as exc:
            raise ApiError(400, str(exc), "bad-command") from None
        with session.lock:
            try:
                new = apply_command(session.stack, cmd)
            except BeamStackError as exc:
                raise ApiError(409, str(exc), exc.code) from None
            if new is not session.stack:
                session.history.append((cmd, session.stack))
                session.stack = new
            return _view(session.stack)

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str) -> dict:
        session = _session(sid)
        with session.lock:
            if not session.history:
                raise ApiError(409, "nothing to undo", "nothing-to-undo")
            _, session.stack = session.history.pop()
            return _view(session.stack)

    def _run_script(session: Session, text: str) -> dict:
        try:
            script = parse(text)
            report = evaluate(script)
        except ParseError as exc:
            raise ApiError(400, str(exc), "parse-error") from None
        except ScriptRuntimeError as exc:
            raise ApiError(409, str(exc), exc.code) from None
        with session.lock:
            session.stack = empty_stack()
            session.history = []
            for cmd in script.commands:
                new = apply_command(session.stack, cmd)
                if new is not session.stack:
                    session.history.append((cmd, session.stack))
                    session.stack = new
        return {
            "steps": [
                {
                    "command": step.command,
                    "beams": [{"intensity": v} for v in step.intensities],
                }
                for step in report.steps
            ],
            "final": {"beams": [{"intensity": v} for v in report.final]},
        }

    @app.post("/sessions/{sid}/script")
    async def run_script(sid: str, request: Request) -> dict:
        session = _session(sid)
        raw = await request.body()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            raise ApiError(400, "script body must be UTF-8 text", "bad-script") from None
        return await run_in_threadpool(_run_script, session, text)

    @app.get("/healthz")
    def healthz() -> PlainTextResponse:
        return PlainTextResponse("ok")

    return app
