import pytest

from roundtable.engine import DiscussionEngine

PAIRS4 = [
    ("AI Image Generation Ethics", "Where should creators draw the line with synthetic images?"),
    ("Political Misinformation Online", "How should platforms handle fabricated imagery?"),
    ("Impact of AI on Elections", "What effect could synthetic media have on voting?"),
    ("Responsibility of Tech Companies", "Should companies answer for how their tools get used?"),
]

ROSTER = [
    ("ana", "LV0"),
    ("abe", "LV0"),
    ("bea", "LV1"),
    ("ben", "LV1"),
    ("bess", "LV1"),
    ("bram", "LV1"),
    ("cara", "LV2"),
    ("cole", "LV2"),
    ("cyra", "LV2"),
    ("dean", "LV2"),
    ("dora", "LV2"),
]

T0 = "2025-01-06T09:00:00+00:00"


def make_engine(config=None) -> DiscussionEngine:
    return DiscussionEngine("cnn:test-article", "article text body", PAIRS4, T0, config=config)


def register_roster(engine: DiscussionEngine) -> dict[str, str]:
    """Register the standard roster; returns username -> user_id."""
    return {
        name: engine.register_user(name, level, at=T0).user_id for name, level in ROSTER
    }


def accept_cluster(engine, users, moved, anchor=None, cluster=None, proposer="ana"):
    """Propose a move and drive it to acceptance with three LV1 approvals."""
    thread_id = engine.comments[moved].thread_id
    activity = engine.propose_cluster(
        users[proposer], thread_id, moved,
        anchor_comment_id=anchor, target_cluster_id=cluster, at=T0,
    )
    outcome = None
    for reviewer in ("bea", "ben", "bess"):
        outcome = engine.review_cluster(users[reviewer], activity.activity_id, "approve", at=T0)
    return activity, outcome


@pytest.fixture
def engine():
    return make_engine()


@pytest.fixture
def users(engine):
    return register_roster(engine)
