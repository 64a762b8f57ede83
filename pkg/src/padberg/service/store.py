"""In-memory session registry with per-session locking.

Sessions are pure derivations of (text, config); the store only guards
concurrent mutation of one session, the pipeline itself is reentrant.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from datetime import datetime, timezone

from ..exchange import ComposeConfig
from ..pipeline import Composition, compose


class UnknownSessionError(KeyError):
    pass


@dataclass
class Session:
    id: str
    created_at: str
    composition: Composition


class SessionStore:
    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self._ids = itertools.count(1)

    def create(self, text: str, config: ComposeConfig) -> Session:
        composition = compose(text, config)
        with self._registry_lock:
            session = Session(
                id=f"s{next(self._ids)}",
                created_at=datetime.now(timezone.utc).isoformat(),
                composition=composition,
            )
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()
        return session

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise UnknownSessionError(session_id) from None

    def lock(self, session_id: str) -> threading.Lock:
        try:
            return self._locks[session_id]
        except KeyError:
            raise UnknownSessionError(session_id) from None

    def reconfigure(self, session_id: str, config: ComposeConfig) -> Session:
        """Re-derive a session's composition under its lock."""
        with self.lock(session_id):
            session = self.get(session_id)
            session.composition = compose(session.composition.text, config)
            return session
