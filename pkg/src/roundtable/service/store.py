"""Event-sourced persistence.

Every mutation is appended to a per-discussion event log (SQLite);
replaying a log through a fresh engine reconstructs the exact state.
Sessions (token -> user binding) and idempotency-key response caches
live in side tables; they are authentication plumbing, not engine state.
"""

from __future__ import annotations

import json
import sqlite3
import threading
from dataclasses import dataclass

from ..engine.engine import DiscussionEngine
from ..engine.errors import NotFoundError, ValidationError
from ..engine.models import EngineConfig


@dataclass(frozen=True)
class PersistedEvent:
    sequence_number: int
    actor_id: str
    operation: str
    payload: dict
    ts: str

    def to_dict(self) -> dict:
        return {
            "sequence_number": self.sequence_number,
            "actor_id": self.actor_id,
            "operation": self.operation,
            "payload": self.payload,
            "ts": self.ts,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PersistedEvent":
        return cls(
            sequence_number=int(data["sequence_number"]),
            actor_id=str(data["actor_id"]),
            operation=str(data["operation"]),
            payload=dict(data["payload"]),
            ts=str(data["ts"]),
        )


CREATE_OP = "create_discussion"

# operation name -> engine method call; actor_id is always the acting user.
_OPS = {
    "register_user": lambda e, actor, p: e.register_user(p["username"], p["level"], at=p["at"]),
    "post_comment": lambda e, actor, p: e.post_comment(
        actor, p["thread_id"], p["body"], p.get("parent_id"), at=p["at"]
    ),
    "edit_comment": lambda e, actor, p: e.edit_comment(
        actor, p["comment_id"], p["body"], at=p["at"]
    ),
    "delete_comment": lambda e, actor, p: e.delete_comment(actor, p["comment_id"], at=p["at"]),
    "toggle_like": lambda e, actor, p: e.toggle_like(actor, p["comment_id"], at=p["at"]),
    "propose_cluster": lambda e, actor, p: e.propose_cluster(
        actor,
        p["thread_id"],
        p["moved_comment_id"],
        anchor_comment_id=p.get("anchor_comment_id"),
        target_cluster_id=p.get("target_cluster_id"),
        at=p["at"],
    ),
    "review_cluster": lambda e, actor, p: e.review_cluster(
        actor, p["activity_id"], p["verdict"], at=p["at"]
    ),
    "summarize_cluster": lambda e, actor, p: e.summarize_cluster(
        actor, p["cluster_id"], p["text"], p.get("ai_suggested_text", ""), at=p["at"]
    ),
    "propose_thread": lambda e, actor, p: e.propose_thread(
        actor, p["topic"], p["guiding_question"], p["source"], at=p["at"]
    ),
    "review_thread": lambda e, actor, p: e.review_thread(
        actor, p["proposal_id"], p["verdict"], at=p["at"]
    ),
}

OPERATIONS = (CREATE_OP, *sorted(_OPS))


def apply_event(engine: DiscussionEngine | None, event: PersistedEvent) -> object:
    """Apply one event; for the creation event, returns the new engine."""
    if event.operation == CREATE_OP:
        if engine is not None:
            raise ValidationError("creation event on an existing discussion")
        p = event.payload
        return DiscussionEngine(
            article_ref=p["article_ref"],
            article_text=p["article_text"],
            topic_pairs=[tuple(pair) for pair in p["topic_pairs"]],
            created_at=p["at"],
            config=EngineConfig.from_dict(p["config"]),
        )
    if engine is None:
        raise ValidationError(f"event {event.operation} before discussion creation")
    try:
        op = _OPS[event.operation]
    except KeyError:
        raise ValidationError(f"unknown operation in event log: {event.operation}") from None
    return op(engine, event.actor_id, event.payload)


def replay(events: list[PersistedEvent]) -> DiscussionEngine:
    """Rebuild engine state from a complete, ordered event log."""
    if not events:
        raise ValidationError("empty event log")
    engine: DiscussionEngine | None = None
    for index, event in enumerate(events):
        expected = index + 1
        if event.sequence_number != expected:
            raise ValidationError(
                f"event log has a gap: expected seq {expected}, got {event.sequence_number}"
            )
        if index == 0:
            engine = apply_event(None, event)  # type: ignore[assignment]
        else:
            apply_event(engine, event)
    assert engine is not None
    return engine


class EventStore:
    """SQLite-backed log plus session and idempotency side tables."""

    def __init__(self, path: str = ":memory:"):
        self.path = path
        self._conn = sqlite3.connect(path, check_same_thread=False)
        self._lock = threading.Lock()
        with self._lock, self._conn:
            self._conn.executescript(
                """
                CREATE TABLE IF NOT EXISTS events (
                    discussion_id TEXT NOT NULL,
                    seq INTEGER NOT NULL,
                    actor_id TEXT NOT NULL,
                    operation TEXT NOT NULL,
                    payload TEXT NOT NULL,
                    ts TEXT NOT NULL,
                    PRIMARY KEY (discussion_id, seq)
                );
                CREATE TABLE IF NOT EXISTS sessions (
                    token TEXT PRIMARY KEY,
                    discussion_id TEXT NOT NULL,
                    user_id TEXT NOT NULL
                );
                CREATE TABLE IF NOT EXISTS idempotency (
                    discussion_id TEXT NOT NULL,
                    idem_key TEXT NOT NULL,
                    response TEXT NOT NULL,
                    PRIMARY KEY (discussion_id, idem_key)
                );
                """
            )

    def close(self) -> None:
        self._conn.close()

    # -- events --------------------------------------------------------

    def append(self, discussion_id: str, event: PersistedEvent) -> None:
        with self._lock, self._conn:
            row = self._conn.execute(
                "SELECT COALESCE(MAX(seq), 0) FROM events WHERE discussion_id = ?",
                (discussion_id,),
            ).fetchone()
            if event.sequence_number != row[0] + 1:
                raise ValidationError(
                    f"sequence gap: expected {row[0] + 1}, got {event.sequence_number}"
                )
            self._conn.execute(
                "INSERT INTO events VALUES (?, ?, ?, ?, ?, ?)",
                (
                    discussion_id,
                    event.sequence_number,
                    event.actor_id,
                    event.operation,
                    json.dumps(event.payload, sort_keys=True),
                    event.ts,
                ),
            )

    def events(self, discussion_id: str) -> list[PersistedEvent]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT seq, actor_id, operation, payload, ts FROM events "
                "WHERE discussion_id = ? ORDER BY seq",
                (discussion_id,),
            ).fetchall()
        return [
            PersistedEvent(
                sequence_number=seq,
                actor_id=actor,
                operation=op,
                payload=json.loads(payload),
                ts=ts,
            )
            for seq, actor, op, payload, ts in rows
        ]

    def discussion_ids(self) -> list[str]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT DISTINCT discussion_id FROM events ORDER BY discussion_id"
            ).fetchall()
        return [row[0] for row in rows]

    def last_seq(self, discussion_id: str) -> int:
        with self._lock:
            row = self._conn.execute(
                "SELECT COALESCE(MAX(seq), 0) FROM events WHERE discussion_id = ?",
                (discussion_id,),
            ).fetchone()
        return int(row[0])

    # -- sessions ------------------------------------------------------

    def put_session(self, token: str, discussion_id: str, user_id: str) -> None:
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO sessions VALUES (?, ?, ?)", (token, discussion_id, user_id)
            )

    def get_session(self, token: str) -> tuple[str, str]:
        with self._lock:
            row = self._conn.execute(
                "SELECT discussion_id, user_id FROM sessions WHERE token = ?", (token,)
            ).fetchone()
        if row is None:
            raise NotFoundError("unknown session token")
        return row[0], row[1]

    # -- idempotency ---------------------------------------------------

    def idempotency_get(self, discussion_id: str, key: str) -> dict | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT response FROM idempotency WHERE discussion_id = ? AND idem_key = ?",
                (discussion_id, key),
            ).fetchone()
        return json.loads(row[0]) if row else None

    def idempotency_put(self, discussion_id: str, key: str, response: dict) -> None:
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT OR REPLACE INTO idempotency VALUES (?, ?, ?)",
                (discussion_id, key, json.dumps(response, sort_keys=True)),
            )
