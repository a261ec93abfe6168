"""One deliberation session: a document refined statement by statement.

Session state is an immutable snapshot swapped atomically on every
write, so concurrent reads always see a coherent (document, history,
recommendation, revision) quadruple.  Undo pops the last statement but
still advances the revision; replaying the history against the initial
document reproduces the current state exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .core import DEFAULT_CONFIG, EngineConfig
from .dsl import Document, parse
from .model import Recommendation, recommend


@dataclass(frozen=True)
class HistoryEntry:
    statement: str
    revision: int
    verdict: str
    summary: str


@dataclass(frozen=True)
class SessionState:
    document: Document
    applied: tuple[str, ...]
    history: tuple[HistoryEntry, ...]
    revision: int
    recommendation: Optional[Recommendation]


class Session:
    def __init__(
        self,
        initial_text: str,
        session_id: str = "default",
        fallback: Optional[Sequence[str]] = None,
        config: EngineConfig = DEFAULT_CONFIG,
    ) -> None:
        self.id = session_id
        self.config = config
        self.fallback = tuple(fallback) if fallback else None
        self.initial_text = initial_text
        document = parse(initial_text)
        self._state = SessionState(
            document=document,
            applied=(),
            history=(),
            revision=0,
            recommendation=self._recommend(document),
        )

    def _recommend(self, document: Document) -> Optional[Recommendation]:
        if not document.model.acts:
            return None
        return recommend(document.model, document.kb, self.fallback, self.config)

    @property
    def state(self) -> SessionState:
        return self._state

    @property
    def document(self) -> Document:
        return self._state.document

    @property
    def revision(self) -> int:
        return self._state.revision

    @property
    def recommendation(self) -> Optional[Recommendation]:
        return self._state.recommendation

    @property
    def applied(self) -> tuple[str, ...]:
        return self._state.applied

    @property
    def history(self) -> tuple[HistoryEntry, ...]:
        return self._state.history

    def apply_statement(self, statement: str) -> Optional[Recommendation]:
        old = self._state
        document = old.document.apply(statement)
        recommendation = self._recommend(document)
        revision = old.revision + 1
        entry = HistoryEntry(
            statement=statement,
            revision=revision,
            verdict=recommendation.verdict if recommendation else "NO_ARGUMENT",
            summary=recommendation.summary() if recommendation else "NO_ARGUMENT",
        )
        self._state = SessionState(
            document=document,
            applied=old.applied + (statement,),
            history=old.history + (entry,),
            revision=revision,
            recommendation=recommendation,
        )
        return recommendation

    def undo(self) -> Optional[Recommendation]:
        old = self._state
        if not old.applied:
            raise IndexError("nothing to undo")
        applied = old.applied[:-1]
        document = parse("\n".join([self.initial_text, *applied]))
        recommendation = self._recommend(document)
        self._state = SessionState(
            document=document,
            applied=applied,
            history=old.history[:-1],
            revision=old.revision + 1,
            recommendation=recommendation,
        )
        return recommendation

    def replay(self) -> "Session":
        """A fresh session fast-forwarded through this one's history."""
        twin = Session(self.initial_text, self.id, self.fallback, self.config)
        for statement in self._state.applied:
            twin.apply_statement(statement)
        return twin
