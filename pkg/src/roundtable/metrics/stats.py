"""Engagement statistics and comment-quality formulas.

Word counts are whitespace token counts; standard deviations are sample
SDs (n-1 denominator, absent for fewer than two observations).
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from ..engine.errors import ValidationError
from .records import (
    CORE_EMOTIONS,
    ClusterDistribution,
    CommentRecord,
    EmotionRecord,
    PolitenessRecord,
    SentenceLabelRecord,
)


@dataclass(frozen=True)
class EngagementStats:
    topic: str
    condition: str
    total_comments: int          # top-level only
    total_replies: int
    mean_likes: float | None     # over all authored comments in the group
    sd_likes: float | None
    mean_words: float | None
    sd_words: float | None

    def to_dict(self) -> dict:
        return {
            "topic": self.topic,
            "condition": self.condition,
            "total_comments": self.total_comments,
            "total_replies": self.total_replies,
            "mean_likes": self.mean_likes,
            "sd_likes": self.sd_likes,
            "mean_words": self.mean_words,
            "sd_words": self.sd_words,
        }


def _mean_sd(values: list[float]) -> tuple[float | None, float | None]:
    if not values:
        return None, None
    mean = statistics.fmean(values)
    sd = statistics.stdev(values) if len(values) >= 2 else None
    return mean, sd


def engagement_stats(
    records: list[CommentRecord],
    groups: list[tuple[str, str]] | None = None,
) -> list[EngagementStats]:
    """Per (topic, condition) totals, means, and sample SDs.

    ``groups`` forces rows (possibly all-zero) for specific keys; by
    default the keys present in the records are reported, sorted.
    """
    by_group: dict[tuple[str, str], list[CommentRecord]] = {}
    for record in records:
        by_group.setdefault((record.topic, record.condition), []).append(record)
    keys = groups if groups is not None else sorted(by_group)
    rows = []
    for topic, condition in keys:
        members = by_group.get((topic, condition), [])
        mean_likes, sd_likes = _mean_sd([float(r.like_count) for r in members])
        mean_words, sd_words = _mean_sd([float(r.words) for r in members])
        rows.append(
            EngagementStats(
                topic=topic,
                condition=condition,
                total_comments=sum(1 for r in members if not r.is_reply),
                total_replies=sum(1 for r in members if r.is_reply),
                mean_likes=mean_likes,
                sd_likes=sd_likes,
                mean_words=mean_words,
                sd_words=sd_words,
            )
        )
    return rows


def normalized_entropy(dist: ClusterDistribution) -> float:
    """Evenness of the distribution: H / log k, with H over non-empty clusters.

    Returns 0.0 for k = 1 by convention. The log base cancels in the
    ratio. Empty clusters contribute nothing to H but still count in k.
    """
    total = sum(dist.sizes)
    if total < 1:
        raise ValidationError("distribution must contain at least one comment")
    if dist.k == 1:
        return 0.0
    h = 0.0
    for size in dist.sizes:
        if size > 0:
            p = size / total
            h -= p * math.log(p)
    return h / math.log(dist.k)


def coverage(dist: ClusterDistribution) -> float:
    """Fraction of clusters holding at least one comment."""
    return sum(1 for size in dist.sizes if size > 0) / dist.k


def supported_claim_ratio(records: list[SentenceLabelRecord]) -> float | None:
    """Share of claim sentences whose comment also carries a premise or evidence.

    Absent (None) when the records contain no claims at all.
    """
    total_claims = 0
    supported_claims = 0
    for record in records:
        claims = record.labels.count("claim")
        if claims == 0:
            continue
        total_claims += claims
        if any(label in ("premise", "evidence") for label in record.labels):
            supported_claims += claims
    if total_claims == 0:
        return None
    return supported_claims / total_claims


def scr_by_participant(
    records: list[SentenceLabelRecord],
) -> dict[tuple[str, str], float | None]:
    """supported_claim_ratio per (participant, condition)."""
    grouped: dict[tuple[str, str], list[SentenceLabelRecord]] = {}
    for record in records:
        grouped.setdefault((record.participant_id, record.condition), []).append(record)
    return {key: supported_claim_ratio(recs) for key, recs in sorted(grouped.items())}


def comment_emotionality(record: EmotionRecord) -> float:
    """Mean over the comment's sentences of (1 - P(neutral))."""
    return statistics.fmean(1.0 - float(s.get("p_neutral", 0.0)) for s in record.sentences)


def comment_emotion_score(record: EmotionRecord, emotion: str) -> float:
    return statistics.fmean(float(s.get(emotion, 0.0)) for s in record.sentences)


def emotionality_summary(
    records: list[EmotionRecord], group_by: str = "condition"
) -> dict[str, dict[str, float]]:
    """Group means of emotionality and the six core emotions.

    ``group_by`` is 'condition' or 'participant'. Empty input yields an
    empty mapping.
    """
    grouped: dict[str, list[EmotionRecord]] = {}
    for record in records:
        key = record.condition if group_by == "condition" else record.participant_id
        grouped.setdefault(key, []).append(record)
    summary = {}
    for key in sorted(grouped):
        members = grouped[key]
        row = {
            "emotionality": statistics.fmean(comment_emotionality(r) for r in members),
            "n_comments": len(members),
        }
        for emotion in CORE_EMOTIONS:
            row[emotion] = statistics.fmean(
                comment_emotion_score(r, emotion) for r in members
            )
        summary[key] = row
    return summary


def politeness_score(positive_count: int, negative_count: int) -> float:
    """Signed balance of positive vs negative strategies, centered at 0.5."""
    if positive_count < 0 or negative_count < 0:
        raise ValidationError("strategy counts must be non-negative")
    total = positive_count + negative_count
    if total == 0:
        return 0.5
    return 0.5 + (positive_count - negative_count) / (2 * total)


def politeness_by_participant(
    records: list[PolitenessRecord],
) -> dict[tuple[str, str], float]:
    """Mean per-comment politeness score per (participant, condition)."""
    grouped: dict[tuple[str, str], list[float]] = {}
    for record in records:
        score = politeness_score(record.positive_count, record.negative_count)
        grouped.setdefault((record.participant_id, record.condition), []).append(score)
    return {key: statistics.fmean(values) for key, values in sorted(grouped.items())}
