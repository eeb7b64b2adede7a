"""Pydantic request models for the HTTP surface."""

from __future__ import annotations

from pydantic import BaseModel, Field


class CreateDiscussionRequest(BaseModel):
    article_ref: str
    article_text: str
    # Replay/testing hook: explicit pairs bypass the suggestion provider.
    topic_pairs: list[tuple[str, str]] | None = None


class RegisterSessionRequest(BaseModel):
    username: str
    level: str
    article_ref: str


class CommentCreateRequest(BaseModel):
    body: str
    parent_id: str | None = None


class CommentEditRequest(BaseModel):
    body: str


class ClusterProposalRequest(BaseModel):
    moved_comment_id: str
    anchor_comment_id: str | None = None
    target_cluster_id: str | None = None


class VoteRequest(BaseModel):
    verdict: str = Field(pattern="^(approve|decline)$")


class SummaryCreateRequest(BaseModel):
    text: str
    # The draft the author saw; recorded with the summary. When omitted the
    # service asks the provider at save time.
    ai_suggested_text: str | None = None


class ThreadProposalRequest(BaseModel):
    topic: str
    guiding_question: str
    source: str = Field(pattern="^(user_authored|ai_suggested)$")


class ImportArchiveRequest(BaseModel):
    archive: dict
