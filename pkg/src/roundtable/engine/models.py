"""Domain types for the discussion engine.

Everything is a plain dataclass with a ``to_dict`` that produces
JSON-safe values, so full engine state can be snapshotted and compared
byte-for-byte (the replay/determinism contract depends on it).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import ValidationError


class Level(str, Enum):
    LV0 = "LV0"
    LV1 = "LV1"
    LV2 = "LV2"

    @classmethod
    def parse(cls, value: "Level | str") -> "Level":
        if isinstance(value, Level):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValidationError(f"unknown user level: {value!r}") from None


class ActivityStatus(str, Enum):
    PENDING = "pending"
    ACCEPTED = "accepted"
    DENIED = "denied"
    SUPERSEDED = "superseded"


class ProposalStatus(str, Enum):
    PENDING = "pending"
    ACCEPTED = "accepted"
    DENIED = "denied"


class ThreadOrigin(str, Enum):
    INITIAL = "initial"
    USER_CREATED = "user_created"


class ProposalSource(str, Enum):
    USER_AUTHORED = "user_authored"
    AI_SUGGESTED = "ai_suggested"


class PoolState(str, Enum):
    AVAILABLE = "available"  # offered to LV2 users
    IN_USE = "in_use"        # referenced by a pending proposal
    CONSUMED = "consumed"    # turned into an accepted thread


@dataclass
class EngineConfig:
    """Thresholds for the review lifecycles plus initial thread count."""

    cluster_approval_threshold: int = 3
    cluster_denial_threshold: int = 3
    thread_approval_threshold: int = 3
    thread_denial_threshold: int = 3
    initial_topic_count: int = 3

    def __post_init__(self) -> None:
        for name in (
            "cluster_approval_threshold",
            "cluster_denial_threshold",
            "thread_approval_threshold",
            "thread_denial_threshold",
            "initial_topic_count",
        ):
            if int(getattr(self, name)) < 1:
                raise ValidationError(f"{name} must be >= 1")

    def to_dict(self) -> dict:
        return {
            "cluster_approval_threshold": self.cluster_approval_threshold,
            "cluster_denial_threshold": self.cluster_denial_threshold,
            "thread_approval_threshold": self.thread_approval_threshold,
            "thread_denial_threshold": self.thread_denial_threshold,
            "initial_topic_count": self.initial_topic_count,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EngineConfig":
        return cls(**{k: int(v) for k, v in data.items()})


@dataclass
class User:
    user_id: str
    username: str
    level: Level

    def to_dict(self) -> dict:
        return {"user_id": self.user_id, "username": self.username, "level": self.level.value}


@dataclass
class Thread:
    thread_id: str
    topic: str
    guiding_question: str
    origin: ThreadOrigin
    proposer_id: str | None
    created_at: str
    ordering_index: int
    # Ordered top-level arrangement: ("comment", comment_id) | ("cluster", cluster_id)
    layout: list[tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "thread_id": self.thread_id,
            "topic": self.topic,
            "guiding_question": self.guiding_question,
            "origin": self.origin.value,
            "proposer_id": self.proposer_id,
            "created_at": self.created_at,
            "ordering_index": self.ordering_index,
            "layout": [list(ref) for ref in self.layout],
        }


@dataclass
class Comment:
    comment_id: str
    thread_id: str
    author_id: str
    body: str
    parent_id: str | None
    created_at: str
    edited_at: str | None = None
    deleted: bool = False
    like_user_ids: list[str] = field(default_factory=list)
    reply_ids: list[str] = field(default_factory=list)

    @property
    def is_top_level(self) -> bool:
        return self.parent_id is None

    def to_dict(self) -> dict:
        return {
            "comment_id": self.comment_id,
            "thread_id": self.thread_id,
            "author_id": self.author_id,
            "body": self.body,
            "parent_id": self.parent_id,
            "created_at": self.created_at,
            "edited_at": self.edited_at,
            "deleted": self.deleted,
            "like_user_ids": list(self.like_user_ids),
            "reply_ids": list(self.reply_ids),
        }


@dataclass
class Cluster:
    cluster_id: str
    thread_id: str
    member_comment_ids: list[str]
    contributing_activity_ids: list[str]
    summary_id: str | None = None
    visible: bool = True
    # Captured when the cluster is summarized; the frozen-cluster invariant
    # is checked against these.
    frozen_member_ids: list[str] | None = None
    frozen_reply_ids: list[str] | None = None

    @property
    def summarized(self) -> bool:
        return self.summary_id is not None

    def to_dict(self) -> dict:
        return {
            "cluster_id": self.cluster_id,
            "thread_id": self.thread_id,
            "member_comment_ids": list(self.member_comment_ids),
            "contributing_activity_ids": list(self.contributing_activity_ids),
            "summary_id": self.summary_id,
            "visible": self.visible,
            "frozen_member_ids": list(self.frozen_member_ids) if self.frozen_member_ids else None,
            "frozen_reply_ids": list(self.frozen_reply_ids) if self.frozen_reply_ids else None,
        }


@dataclass
class Summary:
    summary_id: str
    cluster_id: str
    author_id: str
    text: str
    ai_suggested_text: str
    created_at: str
    thread_id: str
    removed: bool = False  # set when the cluster dissolved afterwards

    def to_dict(self) -> dict:
        return {
            "summary_id": self.summary_id,
            "cluster_id": self.cluster_id,
            "author_id": self.author_id,
            "text": self.text,
            "ai_suggested_text": self.ai_suggested_text,
            "created_at": self.created_at,
            "thread_id": self.thread_id,
            "removed": self.removed,
        }


@dataclass
class ClusteringActivity:
    activity_id: str
    thread_id: str
    proposer_id: str
    moved_comment_id: str
    anchor_comment_id: str | None
    target_cluster_id: str | None
    snapshot_before: list[dict]
    snapshot_after: list[dict]
    created_at: str
    status: ActivityStatus = ActivityStatus.PENDING
    approve_votes: list[str] = field(default_factory=list)
    decline_votes: list[str] = field(default_factory=list)
    resolved_at: str | None = None
    result_cluster_id: str | None = None

    def to_dict(self) -> dict:
        return {
            "activity_id": self.activity_id,
            "thread_id": self.thread_id,
            "proposer_id": self.proposer_id,
            "moved_comment_id": self.moved_comment_id,
            "anchor_comment_id": self.anchor_comment_id,
            "target_cluster_id": self.target_cluster_id,
            "snapshot_before": self.snapshot_before,
            "snapshot_after": self.snapshot_after,
            "created_at": self.created_at,
            "status": self.status.value,
            "approve_votes": list(self.approve_votes),
            "decline_votes": list(self.decline_votes),
            "resolved_at": self.resolved_at,
            "result_cluster_id": self.result_cluster_id,
        }


@dataclass
class ThreadProposal:
    proposal_id: str
    proposer_id: str
    topic: str
    guiding_question: str
    source: ProposalSource
    created_at: str
    status: ProposalStatus = ProposalStatus.PENDING
    approve_votes: list[str] = field(default_factory=list)
    decline_votes: list[str] = field(default_factory=list)
    resolved_at: str | None = None
    created_thread_id: str | None = None

    def to_dict(self) -> dict:
        return {
            "proposal_id": self.proposal_id,
            "proposer_id": self.proposer_id,
            "topic": self.topic,
            "guiding_question": self.guiding_question,
            "source": self.source.value,
            "created_at": self.created_at,
            "status": self.status.value,
            "approve_votes": list(self.approve_votes),
            "decline_votes": list(self.decline_votes),
            "resolved_at": self.resolved_at,
            "created_thread_id": self.created_thread_id,
        }


@dataclass
class PoolEntry:
    topic: str
    question: str
    state: PoolState = PoolState.AVAILABLE

    def to_dict(self) -> dict:
        return {"topic": self.topic, "question": self.question, "state": self.state.value}


@dataclass
class ReviewOutcome:
    """Result of a single review vote."""

    status: str
    approve_count: int
    decline_count: int
    cluster_id: str | None = None  # set when this vote finalized a cluster
    thread_id: str | None = None   # set when this vote created a thread

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "approve_count": self.approve_count,
            "decline_count": self.decline_count,
        }
        if self.cluster_id is not None:
            out["cluster_id"] = self.cluster_id
        if self.thread_id is not None:
            out["thread_id"] = self.thread_id
        return out
