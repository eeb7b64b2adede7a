from .records import (
    CORE_EMOTIONS,
    SENTENCE_LABELS,
    ClusterDistribution,
    CommentRecord,
    EmotionRecord,
    PolitenessRecord,
    SentenceLabelRecord,
    load_emotion_records,
    load_politeness_records,
    load_sentence_labels,
    records_from_state,
)
from .report import FOOTNOTES, REPORT_FORMAT, emit_report, render_engagement_table
from .stats import (
    EngagementStats,
    comment_emotionality,
    comment_emotion_score,
    coverage,
    emotionality_summary,
    engagement_stats,
    normalized_entropy,
    politeness_by_participant,
    politeness_score,
    scr_by_participant,
    supported_claim_ratio,
)

__all__ = [
    "ClusterDistribution",
    "CommentRecord",
    "EmotionRecord",
    "PolitenessRecord",
    "SentenceLabelRecord",
    "EngagementStats",
    "SENTENCE_LABELS",
    "CORE_EMOTIONS",
    "REPORT_FORMAT",
    "FOOTNOTES",
    "engagement_stats",
    "normalized_entropy",
    "coverage",
    "supported_claim_ratio",
    "scr_by_participant",
    "comment_emotionality",
    "comment_emotion_score",
    "emotionality_summary",
    "politeness_score",
    "politeness_by_participant",
    "emit_report",
    "render_engagement_table",
    "load_sentence_labels",
    "load_emotion_records",
    "load_politeness_records",
    "records_from_state",
]
