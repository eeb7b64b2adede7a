import pytest

from roundtable.engine.errors import (
    ClusterFrozenError,
    ConflictError,
    DepthViolationError,
    ForbiddenError,
    GoneError,
    NotFoundError,
    ProviderError,
    ValidationError,
)

from conftest import PAIRS4, T0, accept_cluster, make_engine


def test_init_creates_three_threads_and_pools_the_rest(engine):
    threads = engine.ordered_threads()
    assert [t.topic for t in threads] == [t for t, _ in PAIRS4[:3]]
    assert all(t.guiding_question for t in threads)
    assert all(t.origin.value == "initial" for t in threads)
    assert [(e.topic, e.question) for e in engine.suggestion_pool] == [PAIRS4[3]]


def test_init_requires_enough_topic_pairs():
    from roundtable.engine import DiscussionEngine

    with pytest.raises(ProviderError):
        DiscussionEngine("cnn:short", "text", PAIRS4[:2], T0)


def test_register_duplicate_username_conflicts(engine):
    engine.register_user("ana", "LV0", at=T0)
    with pytest.raises(ConflictError):
        engine.register_user("ana", "LV1", at=T0)


def test_register_rejects_bad_level_and_empty_name(engine):
    with pytest.raises(ValidationError):
        engine.register_user("bob", "LV5", at=T0)
    with pytest.raises(ValidationError):
        engine.register_user("   ", "LV1", at=T0)


def test_every_level_may_write(engine, users):
    for name in ("ana", "bea", "cara"):
        comment = engine.post_comment(users[name], "t1", f"hello from {name}", at=T0)
        assert not comment.deleted
    assert len(engine.comments) == 3


def test_empty_body_rejected(engine, users):
    with pytest.raises(ValidationError):
        engine.post_comment(users["ana"], "t1", "   ", at=T0)


def test_reply_renders_under_parent_and_depth_capped(engine, users):
    top = engine.post_comment(users["ana"], "t1", "top", at=T0)
    reply = engine.post_comment(users["bea"], "t1", "reply", parent_id=top.comment_id, at=T0)
    assert reply.comment_id in engine.comments[top.comment_id].reply_ids
    with pytest.raises(DepthViolationError):
        engine.post_comment(users["cara"], "t1", "too deep", parent_id=reply.comment_id, at=T0)


def test_reply_under_summarized_cluster_is_frozen(engine, users):
    a = engine.post_comment(users["ana"], "t1", "first", at=T0)
    b = engine.post_comment(users["abe"], "t1", "second", at=T0)
    _, outcome = accept_cluster(engine, users, a.comment_id, anchor=b.comment_id)
    engine.summarize_cluster(users["bea"], outcome.cluster_id, "summary", "draft", at=T0)
    with pytest.raises(ClusterFrozenError):
        engine.post_comment(users["cara"], "t1", "late reply", parent_id=a.comment_id, at=T0)


def test_edit_only_by_author_and_keeps_likes(engine, users):
    c = engine.post_comment(users["ana"], "t1", "original", at=T0)
    engine.toggle_like(users["bea"], c.comment_id, at=T0)
    edited = engine.edit_comment(users["ana"], c.comment_id, "new text", at="2025-01-06T10:00:00+00:00")
    assert edited.body == "new text"
    assert edited.edited_at == "2025-01-06T10:00:00+00:00"
    assert len(edited.like_user_ids) == 1
    with pytest.raises(ForbiddenError):
        engine.edit_comment(users["abe"], c.comment_id, "hijack", at=T0)


def test_delete_tombstones_and_gone_afterwards(engine, users):
    c = engine.post_comment(users["ana"], "t1", "to remove", at=T0)
    engine.post_comment(users["bea"], "t1", "kept", at=T0)
    engine.delete_comment(users["ana"], c.comment_id, at=T0)
    assert engine.comments[c.comment_id].deleted
    # tombstone keeps its tree position
    assert ("comment", c.comment_id) in engine.threads["t1"].layout
    with pytest.raises(GoneError):
        engine.edit_comment(users["ana"], c.comment_id, "nope", at=T0)
    with pytest.raises(GoneError):
        engine.delete_comment(users["ana"], c.comment_id, at=T0)


def test_delete_requires_author(engine, users):
    c = engine.post_comment(users["ana"], "t1", "mine", at=T0)
    with pytest.raises(ForbiddenError):
        engine.delete_comment(users["abe"], c.comment_id, at=T0)


def test_like_toggle_involution_and_counts(engine, users):
    c = engine.post_comment(users["ana"], "t1", "likeable", at=T0)
    assert engine.toggle_like(users["bea"], c.comment_id, at=T0) == 1
    assert engine.toggle_like(users["cara"], c.comment_id, at=T0) == 2
    # toggling twice returns to the original count
    assert engine.toggle_like(users["bea"], c.comment_id, at=T0) == 1
    assert engine.toggle_like(users["bea"], c.comment_id, at=T0) == 2
    assert engine.comments[c.comment_id].like_user_ids.count(users["bea"]) == 1


def test_like_deleted_comment_gone(engine, users):
    c = engine.post_comment(users["ana"], "t1", "bye", at=T0)
    engine.delete_comment(users["ana"], c.comment_id, at=T0)
    with pytest.raises(GoneError):
        engine.toggle_like(users["bea"], c.comment_id, at=T0)


def test_unknown_ids_not_found(engine, users):
    with pytest.raises(NotFoundError):
        engine.post_comment(users["ana"], "t99", "x", at=T0)
    with pytest.raises(NotFoundError):
        engine.toggle_like(users["ana"], "c99", at=T0)
    with pytest.raises(NotFoundError):
        engine.post_comment("u99", "t1", "x", at=T0)
