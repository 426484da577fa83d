"""Request and response bodies for the HTTP service."""
from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field

from ..errors import Diagnostic
from ..render import DISPLAY, SOURCE, render_output
from ..session import CellResult, Env


class SessionSettings(BaseModel):
    precision: Optional[int] = Field(None, ge=0, le=12)
    unknown: Optional[str] = None


class SessionInfo(BaseModel):
    session_id: str
    precision: int
    unknown: str
    bindings: list[str]

    @classmethod
    def from_env(cls, session_id: str, env: Env) -> "SessionInfo":
        return cls(
            session_id=session_id,
            precision=env.precision,
            unknown=str(env.unknown),
            bindings=sorted(str(name) for name in env.bindings),
        )


class EvalRequest(BaseModel):
    source: str


class OutputModel(BaseModel):
    label: Optional[str]
    display: str
    source: str


class DiagnosticModel(BaseModel):
    severity: str
    code: str
    message: str
    span: Optional[tuple[int, int]]

    @classmethod
    def from_diagnostic(cls, d: Diagnostic) -> "DiagnosticModel":
        return cls(
            severity=d.severity,
            code=d.code,
            message=d.message,
            span=d.span.as_tuple() if d.span is not None else None,
        )


class CellResultModel(BaseModel):
    ok: bool
    outputs: list[OutputModel]
    diagnostics: list[DiagnosticModel]

    @classmethod
    def from_result(cls, result: CellResult) -> "CellResultModel":
        return cls(
            ok=result.ok,
            outputs=[
                OutputModel(
                    label=str(o.label) if o.label is not None else None,
                    display=render_output(None, o.value, DISPLAY),
                    source=render_output(None, o.value, SOURCE),
                )
                for o in result.outputs
            ],
            diagnostics=[
                DiagnosticModel.from_diagnostic(d) for d in result.diagnostics
            ],
        )


class EvalResponse(BaseModel):
    results: list[CellResultModel]


class SplitRequest(BaseModel):
    source: str


class SplitResponse(BaseModel):
    cells: list[str]


class JoinRequest(BaseModel):
    cells: list[str]


class JoinResponse(BaseModel):
    source: str


class HealthResponse(BaseModel):
    status: str
    version: str


class ErrorBody(BaseModel):
    error: str
    message: str
    span: Optional[tuple[int, int]] = None
