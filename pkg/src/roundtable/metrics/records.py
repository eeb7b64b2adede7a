"""Metric input records and label-file ingestion.

Classifier inference happens elsewhere; this module only consumes its
outputs. Label files are line-delimited JSON, one record per line, each
carrying (comment_id, participant_id, condition) plus the payload for
its metric family.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from ..engine.errors import ValidationError

SENTENCE_LABELS = ("claim", "premise", "evidence", "other")
CORE_EMOTIONS = ("anger", "joy", "sadness", "fear", "disgust", "surprise")


@dataclass(frozen=True)
class CommentRecord:
    """One authored comment with the engagement signals Table-style stats need."""

    comment_id: str
    body: str
    is_reply: bool
    like_count: int
    topic: str = ""
    condition: str = ""

    @property
    def words(self) -> int:
        return len(self.body.split())


@dataclass(frozen=True)
class ClusterDistribution:
    """Comment counts over k semantic clusters."""

    k: int
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValidationError("k must be >= 1")
        if len(self.sizes) != self.k:
            raise ValidationError(f"expected {self.k} sizes, got {len(self.sizes)}")
        if any(s < 0 for s in self.sizes):
            raise ValidationError("cluster sizes must be non-negative")
        if sum(self.sizes) < 1:
            raise ValidationError("distribution must contain at least one comment")

    @classmethod
    def of(cls, sizes: Iterable[int]) -> "ClusterDistribution":
        sizes = tuple(int(s) for s in sizes)
        return cls(k=len(sizes), sizes=sizes)


@dataclass(frozen=True)
class SentenceLabelRecord:
    comment_id: str
    participant_id: str
    condition: str
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.labels:
            raise ValidationError(f"comment {self.comment_id}: empty label list")
        for label in self.labels:
            if label not in SENTENCE_LABELS:
                raise ValidationError(f"comment {self.comment_id}: unknown label {label!r}")


@dataclass(frozen=True)
class EmotionRecord:
    comment_id: str
    participant_id: str
    condition: str
    # One dict per sentence: p_neutral plus the six core-emotion probabilities.
    sentences: tuple[dict, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.sentences:
            raise ValidationError(f"comment {self.comment_id}: no sentence probabilities")
        for sent in self.sentences:
            for key in ("p_neutral", *CORE_EMOTIONS):
                p = sent.get(key, 0.0)
                if not 0.0 <= float(p) <= 1.0:
                    raise ValidationError(
                        f"comment {self.comment_id}: {key} probability {p} outside [0, 1]"
                    )


@dataclass(frozen=True)
class PolitenessRecord:
    comment_id: str
    participant_id: str
    condition: str
    positive_count: int
    negative_count: int

    def __post_init__(self) -> None:
        if self.positive_count < 0 or self.negative_count < 0:
            raise ValidationError(f"comment {self.comment_id}: negative strategy counts")


# ---------------------------------------------------------------------------
# ingestion

def _iter_jsonl(path: str | Path) -> Iterable[tuple[int, dict]]:
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{path}:{lineno}: invalid JSON ({exc})") from exc
            if not isinstance(obj, dict):
                raise ValidationError(f"{path}:{lineno}: expected an object")
            yield lineno, obj


def _common_fields(path: str | Path, lineno: int, obj: dict) -> tuple[str, str, str]:
    try:
        return str(obj["comment_id"]), str(obj["participant_id"]), str(obj["condition"])
    except KeyError as exc:
        raise ValidationError(f"{path}:{lineno}: missing field {exc}") from exc


def load_sentence_labels(path: str | Path) -> list[SentenceLabelRecord]:
    records = []
    for lineno, obj in _iter_jsonl(path):
        cid, pid, cond = _common_fields(path, lineno, obj)
        labels = obj.get("labels")
        if not isinstance(labels, list):
            raise ValidationError(f"{path}:{lineno}: 'labels' must be a list")
        records.append(
            SentenceLabelRecord(
                comment_id=cid, participant_id=pid, condition=cond, labels=tuple(labels)
            )
        )
    return records


def load_emotion_records(path: str | Path) -> list[EmotionRecord]:
    records = []
    for lineno, obj in _iter_jsonl(path):
        cid, pid, cond = _common_fields(path, lineno, obj)
        sentences = obj.get("sentences")
        if not isinstance(sentences, list):
            raise ValidationError(f"{path}:{lineno}: 'sentences' must be a list")
        records.append(
            EmotionRecord(
                comment_id=cid,
                participant_id=pid,
                condition=cond,
                sentences=tuple(dict(s) for s in sentences),
            )
        )
    return records


def load_politeness_records(path: str | Path) -> list[PolitenessRecord]:
    records = []
    for lineno, obj in _iter_jsonl(path):
        cid, pid, cond = _common_fields(path, lineno, obj)
        records.append(
            PolitenessRecord(
                comment_id=cid,
                participant_id=pid,
                condition=cond,
                positive_count=int(obj.get("positive", 0)),
                negative_count=int(obj.get("negative", 0)),
            )
        )
    return records


def records_from_state(state: dict, topic: str, condition: str) -> list[CommentRecord]:
    """Comment records for engagement stats from an engine state snapshot."""
    records = []
    for comment in state.get("comments", []):
        if comment.get("deleted"):
            continue
        records.append(
            CommentRecord(
                comment_id=comment["comment_id"],
                body=comment["body"],
                is_reply=comment.get("parent_id") is not None,
                like_count=len(comment.get("like_user_ids", [])),
                topic=topic,
                condition=condition,
            )
        )
    return records
