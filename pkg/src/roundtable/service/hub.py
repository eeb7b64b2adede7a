"""Discussion hub: live engines on top of the event store.

All mutations for a discussion serialize through one lock, so engine
commands apply atomically and threshold transitions happen exactly once
even under concurrent requests. Timestamps are stamped here (and logged
with the event), which keeps replay deterministic.
"""

from __future__ import annotations

import secrets
import threading
from datetime import datetime, timezone
from typing import Callable

from ..engine.engine import DiscussionEngine, discussion_id_for
from ..engine.errors import (
    AlreadyExistsError,
    DomainError,
    NotFoundError,
    ValidationError,
)
from ..engine.models import EngineConfig
from ..suggest.provider import Provider, stub_provider, suggest_topics
from .store import CREATE_OP, EventStore, PersistedEvent, apply_event, replay

ARCHIVE_FORMAT = "roundtable-archive/1"


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


class DiscussionHub:
    def __init__(
        self,
        store: EventStore | None = None,
        provider: Provider | None = None,
        config: EngineConfig | None = None,
        clock: Callable[[], str] = utc_now,
    ):
        self.store = store or EventStore(":memory:")
        self.provider = provider or stub_provider()
        self.config = config or EngineConfig()
        self.clock = clock
        self._engines: dict[str, DiscussionEngine] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        for discussion_id in self.store.discussion_ids():
            self._engines[discussion_id] = replay(self.store.events(discussion_id))

    # ------------------------------------------------------------------

    def _lock_for(self, discussion_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(discussion_id, threading.Lock())

    def engine(self, discussion_id: str) -> DiscussionEngine:
        engine = self._engines.get(discussion_id)
        if engine is None:
            events = self.store.events(discussion_id)
            if not events:
                raise NotFoundError(f"unknown discussion: {discussion_id}")
            engine = replay(events)
            self._engines[discussion_id] = engine
        return engine

    def engine_by_article(self, article_ref: str) -> DiscussionEngine:
        return self.engine(discussion_id_for(article_ref))

    def discussion_ids(self) -> list[str]:
        return self.store.discussion_ids()

    # ------------------------------------------------------------------

    def create_discussion(
        self,
        article_ref: str,
        article_text: str,
        topic_pairs: list[tuple[str, str]] | None = None,
    ) -> DiscussionEngine:
        """Initialize the shared discussion for an article.

        ``topic_pairs`` is a replay/testing hook; live creation asks the
        configured suggestion provider.
        """
        if not article_text or not article_text.strip():
            raise ValidationError("article text must be non-empty")
        discussion_id = discussion_id_for(article_ref)
        lock = self._lock_for(discussion_id)
        with lock:
            if discussion_id in self._engines or self.store.last_seq(discussion_id) > 0:
                raise AlreadyExistsError(f"discussion exists for {article_ref}")
            if topic_pairs is None:
                suggestions = suggest_topics(self.provider, article_text)
                topic_pairs = [(s.topic, s.question) for s in suggestions]
            at = self.clock()
            engine = DiscussionEngine(
                article_ref=article_ref,
                article_text=article_text,
                topic_pairs=topic_pairs,
                created_at=at,
                config=self.config,
            )
            self.store.append(
                discussion_id,
                PersistedEvent(
                    sequence_number=1,
                    actor_id="system",
                    operation=CREATE_OP,
                    payload={
                        "article_ref": article_ref,
                        "article_text": article_text,
                        "topic_pairs": [list(pair) for pair in topic_pairs],
                        "config": self.config.to_dict(),
                        "at": at,
                    },
                    ts=at,
                ),
            )
            self._engines[discussion_id] = engine
            return engine

    def execute(
        self,
        discussion_id: str,
        actor_id: str,
        operation: str,
        payload: dict,
        idempotency_key: str | None = None,
        respond: Callable[[object, int, DiscussionEngine], dict] | None = None,
    ) -> tuple[dict | object, int, bool]:
        """Apply one mutation; returns (response-or-result, seq, replayed).

        With an idempotency key, a cached response is returned untouched
        and nothing is applied. ``respond`` builds the cacheable response
        body under the same lock that applied the mutation.
        """
        lock = self._lock_for(discussion_id)
        with lock:
            if idempotency_key is not None:
                cached = self.store.idempotency_get(discussion_id, idempotency_key)
                if cached is not None:
                    return cached, int(cached.get("seq", 0)), True
            engine = self.engine(discussion_id)
            at = self.clock()
            event = PersistedEvent(
                sequence_number=self.store.last_seq(discussion_id) + 1,
                actor_id=actor_id,
                operation=operation,
                payload={**payload, "at": at},
                ts=at,
            )
            try:
                result = apply_event(engine, event)
            except DomainError:
                # Engine ops validate before mutating; drop the cached engine
                # anyway so state can never drift from the log.
                self._engines.pop(discussion_id, None)
                raise
            self.store.append(discussion_id, event)
            seq = event.sequence_number
            if respond is not None:
                body = respond(result, seq, engine)
                if idempotency_key is not None:
                    self.store.idempotency_put(discussion_id, idempotency_key, body)
                return body, seq, False
            return result, seq, False

    # ------------------------------------------------------------------

    def register_session(self, username: str, level: str, article_ref: str) -> tuple[str, dict]:
        discussion_id = discussion_id_for(article_ref)
        self.engine(discussion_id)  # not-found if missing
        result, _, _ = self.execute(
            discussion_id, "system", "register_user", {"username": username, "level": level}
        )
        user = result.to_dict()  # type: ignore[union-attr]
        token = "tok-" + secrets.token_hex(16)
        self.store.put_session(token, discussion_id, user["user_id"])
        return token, user

    def resolve_session(self, token: str) -> tuple[DiscussionEngine, str, str]:
        discussion_id, user_id = self.store.get_session(token)
        return self.engine(discussion_id), discussion_id, user_id

    # ------------------------------------------------------------------

    def export_discussion(self, discussion_id: str) -> dict:
        engine = self.engine(discussion_id)
        lock = self._lock_for(discussion_id)
        with lock:
            return {
                "format": ARCHIVE_FORMAT,
                "discussion_id": discussion_id,
                "events": [e.to_dict() for e in self.store.events(discussion_id)],
                "state": engine.snapshot(),
            }

    def import_archive(self, archive: dict) -> DiscussionEngine:
        if archive.get("format") != ARCHIVE_FORMAT:
            raise ValidationError(f"unsupported archive format: {archive.get('format')!r}")
        events = [PersistedEvent.from_dict(e) for e in archive.get("events", [])]
        engine = replay(events)
        if archive.get("state") and engine.snapshot() != archive["state"]:
            raise ValidationError("archive state does not match its event log")
        discussion_id = engine.discussion_id
        lock = self._lock_for(discussion_id)
        with lock:
            if self.store.last_seq(discussion_id) > 0:
                raise AlreadyExistsError(f"discussion {discussion_id} already present")
            for event in events:
                self.store.append(discussion_id, event)
            self._engines[discussion_id] = engine
        return engine
