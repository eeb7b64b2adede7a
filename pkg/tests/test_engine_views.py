import json

import pytest

from roundtable.engine.errors import NotFoundError
from roundtable.engine.views import project_view

from conftest import T0, accept_cluster


def seed(engine, users):
    ids = [
        engine.post_comment(users["ana"], "t1", f"seed comment {i}", at=T0).comment_id
        for i in range(4)
    ]
    activity = engine.propose_cluster(users["ana"], "t1", ids[0], anchor_comment_id=ids[1], at=T0)
    return ids, activity


def test_unknown_viewer_not_found(engine, users):
    with pytest.raises(NotFoundError):
        project_view(engine, "u999")


def test_pending_arrangement_visible_only_to_proposer_and_lv1(engine, users):
    ids, activity = seed(engine, users)
    proposer_view = project_view(engine, users["ana"])
    assert [a["activity_id"] for a in proposer_view["my_pending_activities"]] == [activity.activity_id]

    lv1_view = project_view(engine, users["bea"])
    queue = lv1_view["cluster_review_queue"]
    assert [a["activity_id"] for a in queue] == [activity.activity_id]
    assert queue[0]["snapshot_before"] and queue[0]["snapshot_after"]

    for other in ("abe", "cara"):  # LV0 non-proposer, LV2
        view = project_view(engine, users[other])
        blob = json.dumps(view)
        assert activity.activity_id not in blob
        assert "my_pending_activities" not in view or view["my_pending_activities"] == []
        assert "cluster_review_queue" not in view


def test_accepted_cluster_visible_to_everyone(engine, users):
    ids, activity = seed(engine, users)
    for reviewer in ("bea", "ben", "bess"):
        outcome = engine.review_cluster(users[reviewer], activity.activity_id, "approve", at=T0)
    for name in users:
        view = project_view(engine, users[name])
        layout = view["threads"][0]["layout"]
        clusters = [item for item in layout if item["kind"] == "cluster"]
        assert len(clusters) == 1
        assert clusters[0]["cluster_id"] == outcome.cluster_id
        member_ids = [c["comment_id"] for c in clusters[0]["comments"]]
        assert member_ids == [ids[1], ids[0]]


def test_summary_surfaces_on_overview_with_timestamp(engine, users):
    ids, _ = seed(engine, users)
    _, outcome = accept_cluster(engine, users, ids[2], anchor=ids[3], proposer="abe")
    engine.summarize_cluster(
        users["bea"], outcome.cluster_id, "What the group converged on.", "a draft",
        at="2025-01-07T12:00:00+00:00",
    )
    view = project_view(engine, users["cara"])
    thread_card = view["threads"][0]
    assert [s["text"] for s in thread_card["summaries"]] == ["What the group converged on."]
    assert thread_card["summaries"][0]["created_at"] == "2025-01-07T12:00:00+00:00"
    # and at the top of the cluster in the layout
    cluster_items = [i for i in thread_card["layout"] if i["kind"] == "cluster"]
    assert cluster_items[0]["summary"]["text"] == "What the group converged on."


def test_deleted_comment_body_hidden(engine, users):
    c = engine.post_comment(users["ana"], "t1", "secret text", at=T0)
    engine.delete_comment(users["ana"], c.comment_id, at=T0)
    view = project_view(engine, users["cara"])
    rendered = view["threads"][0]["layout"][0]["comment"]
    assert rendered["deleted"] is True
    assert rendered["body"] is None
    assert "secret text" not in json.dumps(view)


def test_lv2_sees_thread_queue_and_pool_but_not_own_proposals_in_queue(engine, users):
    proposal = engine.propose_thread(
        users["cara"], "A Whole New Angle", "What changed?", "user_authored", at=T0
    )
    own = project_view(engine, users["cara"])
    assert [p["proposal_id"] for p in own["my_thread_proposals"]] == [proposal.proposal_id]
    assert all(p["proposal_id"] != proposal.proposal_id for p in own["thread_review_queue"])

    other = project_view(engine, users["cole"])
    assert [p["proposal_id"] for p in other["thread_review_queue"]] == [proposal.proposal_id]
    assert other["suggestion_pool"] == [
        {"topic": "Responsibility of Tech Companies",
         "question": "Should companies answer for how their tools get used?"}
    ]
    # review queues are LV2-only surfaces
    assert "thread_review_queue" not in project_view(engine, users["ana"])
    assert "thread_review_queue" not in project_view(engine, users["bea"])


def test_views_are_self_contained_copies(engine, users):
    c = engine.post_comment(users["ana"], "t1", "mutate me", at=T0)
    view = project_view(engine, users["ana"])
    view["threads"][0]["layout"][0]["comment"]["body"] = "tampered"
    assert engine.comments[c.comment_id].body == "mutate me"
