"""Parser for the structured topic/question responses.

Accepts exactly four Topic/Question pairs, indexed 1..4 in order.
Strict mode is used in tests and enforces the 4-to-5-word topic
constraint from the prompt; lenient mode (live service) skips
unrecognized lines and downgrades constraint violations to warnings.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

from ..engine.errors import ConstraintError, ParseError

logger = logging.getLogger(__name__)

STRICT = "strict"
LENIENT = "lenient"

_TOPIC_RE = re.compile(r"^Topic\s+(\d+)\s*:\s*(.*)$")
_QUESTION_RE = re.compile(r"^Question\s+(\d+)\s*:\s*(.*)$")

PAIR_COUNT = 4
TOPIC_MIN_WORDS = 4
TOPIC_MAX_WORDS = 5


@dataclass(frozen=True)
class TopicSuggestion:
    topic: str
    question: str

    def to_dict(self) -> dict:
        return {"topic": self.topic, "question": self.question}


def word_count(text: str) -> int:
    return len(text.split())


def format_topics(suggestions: list[TopicSuggestion]) -> str:
    """Render suggestions in the response scaffold (inverse of the parser)."""
    lines = []
    for i, s in enumerate(suggestions, start=1):
        lines.append(f"Topic {i}: {s.topic}")
        lines.append(f"Question {i}: {s.question}")
    return "\n".join(lines)


def parse_topics_response(raw: str, strictness: str = STRICT) -> list[TopicSuggestion]:
    if strictness not in (STRICT, LENIENT):
        raise ParseError(f"unknown strictness: {strictness!r}")
    records: list[tuple[str, int, str]] = []
    for line in (raw or "").splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        m = _TOPIC_RE.match(stripped)
        if m:
            records.append(("topic", int(m.group(1)), m.group(2).strip()))
            continue
        m = _QUESTION_RE.match(stripped)
        if m:
            records.append(("question", int(m.group(1)), m.group(2).strip()))
            continue
        if strictness == STRICT:
            raise ParseError(f"unrecognized line: {stripped[:80]!r}")
        logger.warning("ignoring unrecognized response line: %r", stripped[:80])

    expected = [(kind, n) for n in range(1, PAIR_COUNT + 1) for kind in ("topic", "question")]
    got = [(kind, n) for kind, n, _ in records]
    if got != expected:
        raise ParseError(
            f"expected {PAIR_COUNT} Topic/Question pairs indexed 1..{PAIR_COUNT} in order, "
            f"got {got}"
        )

    suggestions = []
    for i in range(PAIR_COUNT):
        topic = records[2 * i][2]
        question = records[2 * i + 1][2]
        if not topic:
            raise ParseError(f"topic {i + 1} is empty")
        if not question:
            raise ParseError(f"question {i + 1} is empty")
        n_words = word_count(topic)
        if not TOPIC_MIN_WORDS <= n_words <= TOPIC_MAX_WORDS:
            if strictness == STRICT:
                raise ConstraintError(
                    f"topic {i + 1} has {n_words} words, "
                    f"expected {TOPIC_MIN_WORDS}-{TOPIC_MAX_WORDS}: {topic!r}"
                )
            logger.warning("topic %d outside word bounds (%d words): %r", i + 1, n_words, topic)
        suggestions.append(TopicSuggestion(topic=topic, question=question))
    return suggestions
