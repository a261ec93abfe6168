"""Pydantic request/response models for the deliberation service."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class RecommendationOut(BaseModel):
    verdict: str
    act: Optional[str] = None
    contenders: list[str] = Field(default_factory=list)
    fallback_used: bool = False
    utilities: dict[str, Optional[str]] = Field(default_factory=dict)
    summary: str


class HistoryEntryOut(BaseModel):
    statement: str
    revision: int
    verdict: str
    summary: str


class SessionOut(BaseModel):
    id: str
    revision: int
    document: str
    statements: list[str]
    recommendation: Optional[RecommendationOut] = None
    history: list[HistoryEntryOut]


class StatementIn(BaseModel):
    statement: str
    revision: int


class StatementOut(BaseModel):
    revision: int
    recommendation: Optional[RecommendationOut] = None
    flip: dict[str, Any]


class QueryIn(BaseModel):
    literal: str


class QueryOut(BaseModel):
    revision: int
    literal: str
    verdict: str
    trace: dict[str, Any]


class UndoIn(BaseModel):
    revision: int


class HealthOut(BaseModel):
    status: str
    revision: int
