"""HTTP facade over one deliberation session.

Writes are serialized behind a lock and guarded by optimistic
concurrency: the client states which revision it saw, a mismatch is 409.
Reads never mutate.  Inference runs through exactly the same engine
entry points the command line uses.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse

from ..core import format_rational as _format
from ..dsl import ParseError, parse_literal, serialize
from ..dot import export_dot
from ..engine import justify
from ..session import Session
from .schemas import (
    HealthOut,
    HistoryEntryOut,
    QueryIn,
    QueryOut,
    RecommendationOut,
    SessionOut,
    StatementIn,
    StatementOut,
    UndoIn,
)


def _recommendation_out(session: Session) -> Optional[RecommendationOut]:
    rec = session.recommendation
    if rec is None:
        return None
    data = rec.to_json_dict()
    return RecommendationOut(
        verdict=data["verdict"],
        act=data["act"],
        contenders=data["contenders"],
        fallback_used=data["fallback_used"],
        utilities=data["utilities"],
        summary=data["summary"],
    )


def create_app(session: Session) -> FastAPI:
    app = FastAPI(title="deliberator", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    lock = threading.Lock()

    @app.middleware("http")
    async def stamp_revision(request, call_next):
        response = await call_next(request)
        response.headers["X-Deliberator-Revision"] = str(session.revision)
        return response

    def check_revision(expected: int) -> None:
        if expected != session.revision:
            raise HTTPException(
                status_code=409,
                detail={
                    "error": "stale revision",
                    "expected": session.revision,
                    "got": expected,
                },
            )

    @app.get("/health", response_model=HealthOut)
    def health() -> HealthOut:
        return HealthOut(status="ok", revision=session.revision)

    @app.get("/session", response_model=SessionOut)
    def get_session() -> SessionOut:
        snap = session.state  # one atomic snapshot per read
        rec = snap.recommendation
        return SessionOut(
            id=session.id,
            revision=snap.revision,
            document=serialize(snap.document),
            statements=list(snap.applied),
            recommendation=(
                RecommendationOut(
                    verdict=rec.verdict,
                    act=rec.act,
                    contenders=list(rec.contenders),
                    fallback_used=rec.fallback_used,
                    utilities={
                        a: (None if u is None else _format(u))
                        for a, u in rec.utilities.items()
                    },
                    summary=rec.summary(),
                )
                if rec is not None
                else None
            ),
            history=[
                HistoryEntryOut(
                    statement=h.statement,
                    revision=h.revision,
                    verdict=h.verdict,
                    summary=h.summary,
                )
                for h in snap.history
            ],
        )

    @app.post("/statements", response_model=StatementOut)
    def post_statement(body: StatementIn) -> StatementOut:
        with lock:
            check_revision(body.revision)
            before = session.recommendation
            old_verdict = before.summary() if before else None
            try:
                session.apply_statement(body.statement)
            except ParseError as exc:
                raise HTTPException(
                    status_code=400,
                    detail={
                        "error": "parse error",
                        "message": exc.message,
                        "line": exc.line,
                        "column": exc.column,
                    },
                ) from exc
            after = session.recommendation
            new_verdict = after.summary() if after else None
            return StatementOut(
                revision=session.revision,
                recommendation=_recommendation_out(session),
                flip={
                    "old": old_verdict,
                    "new": new_verdict,
                    "changed": old_verdict != new_verdict,
                },
            )

    @app.post("/query", response_model=QueryOut)
    def post_query(body: QueryIn) -> QueryOut:
        try:
            literal = parse_literal(body.literal)
        except ParseError as exc:
            raise HTTPException(
                status_code=400,
                detail={
                    "error": "parse error",
                    "message": exc.message,
                    "line": exc.line,
                    "column": exc.column,
                },
            ) from exc
        trace = justify(session.document.kb, literal, config=session.config)
        return QueryOut(
            revision=session.revision,
            literal=str(literal),
            verdict=trace.verdict.value,
            trace=trace.to_json_dict(),
        )

    @app.get("/graph.dot", response_class=PlainTextResponse)
    def graph_dot(literal: str = Query(...)) -> str:
        try:
            parsed = parse_literal(literal)
        except ParseError as exc:
            raise HTTPException(
                status_code=400,
                detail={"error": "parse error", "message": exc.message},
            ) from exc
        trace = justify(session.document.kb, parsed, config=session.config)
        return export_dot(trace)

    @app.post("/undo", response_model=StatementOut)
    def post_undo(body: UndoIn) -> StatementOut:
        with lock:
            check_revision(body.revision)
            before = session.recommendation
            old_verdict = before.summary() if before else None
            try:
                session.undo()
            except IndexError as exc:
                raise HTTPException(status_code=400, detail={"error": str(exc)}) from exc
            after = session.recommendation
            new_verdict = after.summary() if after else None
            return StatementOut(
                revision=session.revision,
                recommendation=_recommendation_out(session),
                flip={
                    "old": old_verdict,
                    "new": new_verdict,
                    "changed": old_verdict != new_verdict,
                },
            )

    ui_dir = Path(__file__).resolve().parent.parent.parent.parent / "frontend" / "dist"
    if ui_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
