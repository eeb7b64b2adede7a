"""Prompt construction for the model-assisted features.

The two templates below are the production prompts; builders substitute
only at the marked slots and leave every other byte untouched (tests
diff rendered output against the templates to enforce this).
"""

from __future__ import annotations

from ..engine.errors import ValidationError

SUMMARY_TEMPLATE = (
    "You are a helpful assistant that summarizes comments from a neutral "
    "perspective. Please summarize the following comments from multiple users "
    "from the third perspective while paraphrasing bad words, provide a general "
    "overview of what the comment thread is saying, and limit the summary to "
    "20 words: {comments} Summary:"
)

SUMMARY_SLOT = "{comments}"

TOPICS_TEMPLATE = (
    "You are a helpful assistant that generates topics and questions based on "
    "given text. Please generate 4 diverse and distinct topics based on the "
    "following article text. For each topic, also generate a thought-provoking "
    "question that can open a meaningful conversation among readers and help "
    "explore the topic further. Each topic should be represented by a minimum "
    "of 4 words and a maximum of 5 words. Format the output as follows:\n"
    "Topic 1: <topic>\n"
    "Question 1: <question>\n"
    "Topic 2: <topic>\n"
    "Question 2: <question>\n"
    "Topic 3: <topic>\n"
    "Question 3: <question>\n"
    "Topic 4: <topic>\n"
    "Question 4: <question>\n"
    "\n"
    "Article text: <text>"
)

TOPICS_SLOT = "<text>"


def build_summary_prompt(comment_bodies: list[str]) -> str:
    """Summary prompt with the comments joined one per line at the slot."""
    bodies = [b for b in comment_bodies if b and b.strip()]
    if not bodies:
        raise ValidationError("at least one non-empty comment body required")
    return SUMMARY_TEMPLATE.replace(SUMMARY_SLOT, "\n".join(bodies))


def build_topics_prompt(article_text: str) -> str:
    """Topic-generation prompt with the article substituted at the text slot."""
    if not article_text or not article_text.strip():
        raise ValidationError("article text must be non-empty")
    assert TOPICS_TEMPLATE.endswith(TOPICS_SLOT)
    return TOPICS_TEMPLATE[: -len(TOPICS_SLOT)] + article_text
