from .parser import (
    LENIENT,
    STRICT,
    TopicSuggestion,
    format_topics,
    parse_topics_response,
    word_count,
)
from .prompts import (
    SUMMARY_SLOT,
    SUMMARY_TEMPLATE,
    TOPICS_SLOT,
    TOPICS_TEMPLATE,
    build_summary_prompt,
    build_topics_prompt,
)
from .provider import (
    Provider,
    ProviderKind,
    SummaryDraft,
    SUMMARY_WORD_LIMIT,
    external_provider_from_env,
    stub_provider,
    suggest_summary,
    suggest_topics,
)

__all__ = [
    "TopicSuggestion",
    "SummaryDraft",
    "Provider",
    "ProviderKind",
    "STRICT",
    "LENIENT",
    "SUMMARY_TEMPLATE",
    "SUMMARY_SLOT",
    "TOPICS_TEMPLATE",
    "TOPICS_SLOT",
    "SUMMARY_WORD_LIMIT",
    "build_summary_prompt",
    "build_topics_prompt",
    "parse_topics_response",
    "format_topics",
    "word_count",
    "stub_provider",
    "external_provider_from_env",
    "suggest_summary",
    "suggest_topics",
]
