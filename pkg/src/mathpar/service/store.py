"""In-memory session store with idle expiry.

The store lock guards the table; each session carries its own lock so
concurrent eval requests against one session serialize while different
sessions run in parallel.  The clock is injectable so expiry is testable
without sleeping.
"""
from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Callable

from ..errors import CapacityExceeded, SessionNotFound
from ..session import Env


@dataclass
class SessionEntry:
    session_id: str
    env: Env
    created_at: float
    last_used: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, ttl_minutes: float = 60.0, max_sessions: int = 256,
                 clock: Callable[[], float] = time.monotonic):
        self.ttl_seconds = ttl_minutes * 60.0
        self.max_sessions = max_sessions
        self._clock = clock
        self._guard = threading.Lock()
        self._sessions: dict[str, SessionEntry] = {}

    def _sweep_locked(self, now: float) -> None:
        dead = [
            sid for sid, entry in self._sessions.items()
            if now - entry.last_used >= self.ttl_seconds
        ]
        for sid in dead:
            del self._sessions[sid]

    def create(self) -> SessionEntry:
        now = self._clock()
        with self._guard:
            self._sweep_locked(now)
            if len(self._sessions) >= self.max_sessions:
                raise CapacityExceeded(
                    f"session limit of {self.max_sessions} reached"
                )
            sid = uuid.uuid4().hex
            entry = SessionEntry(sid, Env(), created_at=now, last_used=now)
            self._sessions[sid] = entry
            return entry

    def get(self, session_id: str) -> SessionEntry:
        now = self._clock()
        with self._guard:
            self._sweep_locked(now)
            entry = self._sessions.get(session_id)
            if entry is None:
                raise SessionNotFound(f"no session {session_id!r}")
            entry.last_used = now
            return entry

    def delete(self, session_id: str) -> None:
        with self._guard:
            if self._sessions.pop(session_id, None) is None:
                raise SessionNotFound(f"no session {session_id!r}")

    def count(self) -> int:
        with self._guard:
            self._sweep_locked(self._clock())
            return len(self._sessions)
