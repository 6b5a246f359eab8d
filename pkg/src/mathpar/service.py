"""HTTP face of the kernel: session lifecycle plus section execution.

Evaluation errors come back as 200 responses carrying error diagnostics;
only transport and session problems map to 4xx.  Sessions are evicted
lazily once their idle TTL passes.
"""

import os
import secrets
import threading
import time
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import __version__
from .errors import CancelToken
from .session import Environment, clear_environment, execute_section

MAX_SOURCE_BYTES = 256 * 1024

DEFAULT_TTL = int(os.environ.get("MATHPAR_SESSION_TTL_SECONDS", "3600"))
DEFAULT_EVAL_TIMEOUT = float(os.environ.get("MATHPAR_EVAL_TIMEOUT_SECONDS", "30"))


class RunRequest(BaseModel):
    source: str
    outputMode: Literal["both", "mathpar", "latex"] = "both"


class OutputModel(BaseModel):
    label: Optional[str]
    mathpar: str
    latex: str


class DiagnosticModel(BaseModel):
    severity: str
    message: str
    line: int
    column: int


class RunResponse(BaseModel):
    outputs: list[OutputModel]
    diagnostics: list[DiagnosticModel]
    spaceName: str
    floatpos: int


class _Record:
    __slots__ = ("env", "lock")

    def __init__(self):
        self.env = Environment()
        self.lock = threading.Lock()


class SessionStore:
    """Shared registry of live sessions; per-session locks serialize runs."""

    def __init__(self, ttl_seconds):
        self.ttl = ttl_seconds
        self._records = {}
        self._guard = threading.Lock()

    def create(self):
        sid = secrets.token_hex(16)
        with self._guard:
            self._records[sid] = _Record()
        return sid

    def get(self, sid):
        with self._guard:
            record = self._records.get(sid)
            if record is None:
                raise HTTPException(status_code=404, detail="unknown session")
            if record.env.last_used_at + self.ttl < time.time():
                del self._records[sid]
                raise HTTPException(status_code=410, detail="session expired")
            return record

    def delete(self, sid):
        with self._guard:
            if sid not in self._records:
                raise HTTPException(status_code=404, detail="unknown session")
            del self._records[sid]


def create_app(ttl_seconds=None, eval_timeout=None):
    ttl = DEFAULT_TTL if ttl_seconds is None else ttl_seconds
    timeout = DEFAULT_EVAL_TIMEOUT if eval_timeout is None else eval_timeout
    app = FastAPI(title="mathpar", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(ttl)
    app.state.store = store

    @app.post("/api/sessions", status_code=201)
    def create_session():
        return {"sessionId": store.create()}

    @app.post("/api/sessions/{sid}/run", response_model=RunResponse)
    def run_section(sid: str, request: RunRequest):
        record = store.get(sid)
        if len(request.source.encode("utf-8")) > MAX_SOURCE_BYTES:
            raise HTTPException(status_code=413, detail="source exceeds 256 KiB")
        with record.lock:
            token = CancelToken(budget_seconds=timeout)
            result = execute_section(record.env, request.source, token)
            space_name = record.env.space.name
            floatpos = record.env.space.floatpos
        outputs = []
        for out in result.outputs:
            outputs.append(OutputModel(
                label=out.label,
                mathpar=out.mathpar if request.outputMode in ("both", "mathpar") else "",
                latex=out.latex if request.outputMode in ("both", "latex") else "",
            ))
        diagnostics = [DiagnosticModel(severity=d.severity, message=d.message,
                                       line=d.line, column=d.column)
                       for d in result.diagnostics]
        return RunResponse(outputs=outputs, diagnostics=diagnostics,
                           spaceName=space_name, floatpos=floatpos)

    @app.post("/api/sessions/{sid}/clear", status_code=204)
    def clear_session(sid: str):
        record = store.get(sid)
        with record.lock:
            clear_environment(record.env)
        return Response(status_code=204)

    @app.delete("/api/sessions/{sid}", status_code=204)
    def delete_session(sid: str):
        store.delete(sid)
        return Response(status_code=204)

    @app.get("/api/health")
    def health():
        return {"status": "ok", "version": __version__}

    return app


app = create_app()
