"""Suggestion providers: a deterministic stub and an external chat model.

The stub keeps the whole system runnable and testable offline. Its
output depends only on its input (and its fixed configuration): the
summary draft is extractive, the topics come from word frequencies.
The external provider round-trips the prompt builders and the response
parser over a chat-completion style HTTP call configured through
environment variables.
"""

from __future__ import annotations

import logging
import os
import re
from dataclasses import dataclass, field
from enum import Enum

import httpx

from ..engine.errors import ProviderError, ValidationError
from .parser import LENIENT, STRICT, TopicSuggestion, parse_topics_response, word_count
from .prompts import build_summary_prompt, build_topics_prompt

logger = logging.getLogger(__name__)

SUMMARY_WORD_LIMIT = 20

ENV_ENDPOINT = "ROUNDTABLE_PROVIDER_ENDPOINT"
ENV_MODEL = "ROUNDTABLE_PROVIDER_MODEL"
ENV_API_KEY = "ROUNDTABLE_PROVIDER_API_KEY"
ENV_STRICTNESS = "ROUNDTABLE_PROVIDER_STRICTNESS"


class ProviderKind(str, Enum):
    EXTERNAL_MODEL = "external_model"
    DETERMINISTIC_STUB = "deterministic_stub"


@dataclass
class SummaryDraft:
    text: str
    word_count: int

    @property
    def exceeds_limit(self) -> bool:
        return self.word_count > SUMMARY_WORD_LIMIT

    def to_dict(self) -> dict:
        return {"text": self.text, "word_count": self.word_count}


@dataclass
class Provider:
    kind: ProviderKind = ProviderKind.DETERMINISTIC_STUB
    model_name: str = ""
    strictness: str = STRICT
    # Fixed outputs for a configured stub (used by tests and scenario replays).
    scripted_topics: list[TopicSuggestion] | None = None
    scripted_summary: str | None = None
    # External transport settings.
    endpoint: str = ""
    api_key: str = ""
    timeout: float = 30.0


def stub_provider(
    scripted_topics: list[tuple[str, str]] | None = None,
    scripted_summary: str | None = None,
    strictness: str = STRICT,
) -> Provider:
    topics = None
    if scripted_topics is not None:
        topics = [TopicSuggestion(topic=t, question=q) for t, q in scripted_topics]
    return Provider(
        kind=ProviderKind.DETERMINISTIC_STUB,
        model_name="stub",
        strictness=strictness,
        scripted_topics=topics,
        scripted_summary=scripted_summary,
    )


def external_provider_from_env() -> Provider:
    endpoint = os.environ.get(ENV_ENDPOINT, "")
    if not endpoint:
        raise ProviderError(f"{ENV_ENDPOINT} is not set")
    return Provider(
        kind=ProviderKind.EXTERNAL_MODEL,
        model_name=os.environ.get(ENV_MODEL, "gpt-3.5-turbo"),
        strictness=os.environ.get(ENV_STRICTNESS, LENIENT),
        endpoint=endpoint,
        api_key=os.environ.get(ENV_API_KEY, ""),
    )


# ---------------------------------------------------------------------------
# deterministic stub internals

_SENTENCE_SPLIT = re.compile(r"(?<=[.!?])\s+")
_WORD_RE = re.compile(r"[a-z]+")

STOPWORDS = frozenset(
    """
    a about above after again all also am an and any are as at be because been
    before being below between both but by can cannot could did do does doing
    down during each few for from further had has have having he her here hers
    him his how i if in into is it its itself just like me more most my new no
    nor not now of off on once only or other our ours out over own said say
    says she should so some such than that the their theirs them then there
    these they this those through to too under until up very was we were what
    when where which while who whom why will with would you your yours
    """.split()
)
MIN_CONTENT_WORD_LEN = 3


def _stub_summary(comment_bodies: list[str]) -> SummaryDraft:
    bodies = [b.strip() for b in comment_bodies if b and b.strip()]
    if not bodies:
        raise ValidationError("at least one non-empty comment body required")
    longest = max(bodies, key=lambda b: (word_count(b), -bodies.index(b)))
    first_sentence = _SENTENCE_SPLIT.split(longest)[0].strip()
    words = first_sentence.split()[:SUMMARY_WORD_LIMIT]
    return SummaryDraft(text=" ".join(words), word_count=len(words))


def _content_words(article_text: str) -> list[str]:
    """Distinct content words by descending frequency, first-seen order breaking ties."""
    counts: dict[str, int] = {}
    first_seen: dict[str, int] = {}
    for index, token in enumerate(_WORD_RE.findall(article_text.lower())):
        if len(token) < MIN_CONTENT_WORD_LEN or token in STOPWORDS:
            continue
        counts[token] = counts.get(token, 0) + 1
        first_seen.setdefault(token, index)
    return sorted(counts, key=lambda w: (-counts[w], first_seen[w]))


def _stub_topics(article_text: str) -> list[TopicSuggestion]:
    if not article_text or not article_text.strip():
        raise ValidationError("article text must be non-empty")
    ranked = _content_words(article_text)
    if len(ranked) < 4:
        raise ProviderError(
            f"article has only {len(ranked)} distinct content words, need 4"
        )
    suggestions = []
    for word in ranked[:4]:
        suggestions.append(
            TopicSuggestion(
                topic=f"Community Views On {word.capitalize()}",
                question=f"What stands out to you about {word} in this article?",
            )
        )
    return suggestions


# ---------------------------------------------------------------------------
# external transport

def _chat_completion(provider: Provider, prompt: str) -> str:
    headers = {"Content-Type": "application/json"}
    if provider.api_key:
        headers["Authorization"] = f"Bearer {provider.api_key}"
    payload = {
        "model": provider.model_name,
        "messages": [{"role": "user", "content": prompt}],
    }
    try:
        response = httpx.post(
            provider.endpoint, json=payload, headers=headers, timeout=provider.timeout
        )
        response.raise_for_status()
        return response.json()["choices"][0]["message"]["content"]
    except httpx.HTTPError as exc:
        raise ProviderError(f"model call failed: {exc}") from exc
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ProviderError(f"malformed model response: {exc}") from exc


# ---------------------------------------------------------------------------
# public operations

def suggest_summary(provider: Provider, cluster_comments: list[str]) -> SummaryDraft:
    """A one-paragraph draft for the given comments (order-sensitive)."""
    if provider.kind == ProviderKind.DETERMINISTIC_STUB:
        if provider.scripted_summary is not None:
            if not [b for b in cluster_comments if b and b.strip()]:
                raise ValidationError("at least one non-empty comment body required")
            return SummaryDraft(
                text=provider.scripted_summary,
                word_count=word_count(provider.scripted_summary),
            )
        return _stub_summary(cluster_comments)
    prompt = build_summary_prompt(cluster_comments)
    text = _chat_completion(provider, prompt).strip()
    draft = SummaryDraft(text=text, word_count=word_count(text))
    if draft.exceeds_limit:
        logger.warning(
            "model summary exceeds %d words (%d); keeping it",
            SUMMARY_WORD_LIMIT,
            draft.word_count,
        )
    return draft


def suggest_topics(provider: Provider, article_text: str) -> list[TopicSuggestion]:
    """Topic/question pairs for a fresh discussion (normally four)."""
    if provider.kind == ProviderKind.DETERMINISTIC_STUB:
        if provider.scripted_topics is not None:
            if not article_text or not article_text.strip():
                raise ValidationError("article text must be non-empty")
            return list(provider.scripted_topics)
        return _stub_topics(article_text)
    prompt = build_topics_prompt(article_text)
    return parse_topics_response(_chat_completion(provider, prompt), provider.strictness)
