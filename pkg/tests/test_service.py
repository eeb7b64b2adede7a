import json
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from roundtable.engine.models import EngineConfig
from roundtable.harness.runner import LogicalClock
from roundtable.service.app import create_app
from roundtable.service.hub import DiscussionHub
from roundtable.service.store import EventStore
from roundtable.suggest import stub_provider

from conftest import PAIRS4, ROSTER

ARTICLE_REF = "cnn:service-test"


@pytest.fixture
def client():
    hub = DiscussionHub(
        store=EventStore(":memory:"),
        provider=stub_provider(),
        config=EngineConfig(),
        clock=LogicalClock().next,
    )
    with TestClient(create_app(hub)) as test_client:
        yield test_client


def auth(token):
    return {"Authorization": f"Bearer {token}"}


def create_discussion(client, ref=ARTICLE_REF):
    response = client.post(
        "/api/discussions",
        json={"article_ref": ref, "article_text": "body text",
              "topic_pairs": [list(p) for p in PAIRS4]},
    )
    assert response.status_code == 201, response.text
    return response.json()


def register(client, username, level, ref=ARTICLE_REF):
    response = client.post(
        "/api/sessions", json={"username": username, "level": level, "article_ref": ref}
    )
    assert response.status_code == 201, response.text
    return response.json()["token"]


def register_roster(client):
    return {name: register(client, name, level) for name, level in ROSTER}


def seed_state(client, tokens):
    """Two comments, one pending activity, one accepted+summarizable cluster,
    one pending thread proposal; returns the ids."""
    ids = {}
    for i, name in enumerate(("c_a", "c_b", "c_c", "c_d", "c_e", "c_f")):
        body = client.post(
            "/api/threads/t1/comments",
            json={"body": f"comment number {i}"},
            headers=auth(tokens["ana"]),
        ).json()
        ids[name] = body["comment"]["comment_id"]
    pending = client.post(
        "/api/threads/t1/cluster-activities",
        json={"moved_comment_id": ids["c_a"], "anchor_comment_id": ids["c_b"]},
        headers=auth(tokens["ana"]),
    ).json()
    ids["pending_activity"] = pending["activity"]["activity_id"]
    to_accept = client.post(
        "/api/threads/t1/cluster-activities",
        json={"moved_comment_id": ids["c_c"], "anchor_comment_id": ids["c_d"]},
        headers=auth(tokens["ana"]),
    ).json()
    for reviewer in ("bea", "ben", "bess"):
        outcome = client.post(
            f"/api/cluster-activities/{to_accept['activity']['activity_id']}/votes",
            json={"verdict": "approve"},
            headers=auth(tokens[reviewer]),
        ).json()
    ids["cluster"] = outcome["outcome"]["cluster_id"]
    proposal = client.post(
        f"/api/discussions/{pending['view']['discussion_id']}/thread-proposals",
        json={"topic": "A Pending Thread Topic", "guiding_question": "Why?",
              "source": "user_authored"},
        headers=auth(tokens["cole"]),
    ).json()
    ids["proposal"] = proposal["proposal"]["proposal_id"]
    ids["discussion"] = pending["view"]["discussion_id"]
    return ids


def test_full_surface_happy_path(client):
    created = create_discussion(client)
    assert [t["topic"] for t in created["threads"]] == [t for t, _ in PAIRS4[:3]]
    tokens = register_roster(client)
    ids = seed_state(client, tokens)

    view = client.get(
        f"/api/discussions/{ids['discussion']}/view", headers=auth(tokens["cara"])
    ).json()
    assert view["seq"] > 0
    assert len(view["view"]["threads"]) == 3

    draft = client.get(
        f"/api/clusters/{ids['cluster']}/summary-draft", headers=auth(tokens["bea"])
    )
    assert draft.status_code == 200
    assert draft.json()["draft"]["word_count"] <= 20

    summary = client.post(
        f"/api/clusters/{ids['cluster']}/summary",
        json={"text": "What the cluster says."},
        headers=auth(tokens["bea"]),
    )
    assert summary.status_code == 201
    assert summary.json()["summary"]["ai_suggested_text"]

    report = client.get(f"/api/discussions/{ids['discussion']}/report").json()
    assert report["usage"]["created_clusters"] == 1
    assert report["usage"]["created_summaries"] == 1
    assert report["usage"]["pending_activities"] == 1

    export = client.get(f"/api/discussions/{ids['discussion']}/export").json()
    assert export["format"] == "roundtable-archive/1"
    assert export["state"]["seq"] > 0


def test_error_codes_are_stable_names(client):
    create_discussion(client)
    tokens = register_roster(client)

    missing = client.get("/api/discussions/d-404/view", headers=auth(tokens["ana"]))
    # session bound to another discussion: forbidden before not-found
    assert missing.status_code == 403

    unauth = client.post("/api/threads/t1/comments", json={"body": "x"})
    assert unauth.status_code == 401
    assert unauth.json()["error"]["code"] == "unauthorized"

    dup = client.post(
        "/api/sessions",
        json={"username": "ana", "level": "LV0", "article_ref": ARTICLE_REF},
    )
    assert dup.status_code == 409
    assert dup.json()["error"]["code"] == "conflict"

    bad_level = client.post(
        "/api/sessions",
        json={"username": "zed", "level": "LV5", "article_ref": ARTICLE_REF},
    )
    assert bad_level.status_code == 422
    assert bad_level.json()["error"]["code"] == "validation-error"

    comment = client.post(
        "/api/threads/t1/comments", json={"body": "mine"}, headers=auth(tokens["ana"])
    ).json()["comment"]
    taken = client.patch(
        f"/api/comments/{comment['comment_id']}", json={"body": "hijack"},
        headers=auth(tokens["abe"]),
    )
    assert taken.status_code == 403
    assert taken.json()["error"]["code"] == "forbidden"

    client.delete(f"/api/comments/{comment['comment_id']}", headers=auth(tokens["ana"]))
    gone = client.post(
        f"/api/comments/{comment['comment_id']}/like", headers=auth(tokens["bea"])
    )
    assert gone.status_code == 410
    assert gone.json()["error"]["code"] == "gone"

    dup_discussion = client.post(
        "/api/discussions",
        json={"article_ref": ARTICLE_REF, "article_text": "again",
              "topic_pairs": [list(p) for p in PAIRS4]},
    )
    assert dup_discussion.status_code == 409
    assert dup_discussion.json()["error"]["code"] == "already-exists"


CAPABILITIES = {
    "post_comment": {"LV0", "LV1", "LV2"},
    "like": {"LV0", "LV1", "LV2"},
    "propose_cluster": {"LV0"},
    "review_cluster": {"LV1"},
    "cluster_review_queue": {"LV1"},
    "summary_draft": {"LV1"},
    "summarize": {"LV1"},
    "propose_thread": {"LV2"},
    "review_thread": {"LV2"},
    "thread_review_queue": {"LV2"},
    "suggestion_pool": {"LV2"},
}


def test_authorization_matrix_covers_every_endpoint_and_level(client):
    """Every capability-gated endpoint, driven with a token of each level:
    allowed levels never see 'forbidden'; everyone else always does."""
    create_discussion(client)
    tokens = register_roster(client)
    level_rep = {"LV0": "abe", "LV1": "bram", "LV2": "dora"}  # non-proposers with no votes

    for level, rep in level_rep.items():
        ids = None
        for op, allowed in CAPABILITIES.items():
            # fresh target entities per (level, op) so state never interferes
            suffix = f"{level}-{op}".lower()
            ref = f"cnn:matrix-{suffix}"
            create_discussion(client, ref=ref)
            local = {
                name: register(client, f"{name}-{suffix}", lvl, ref=ref)
                for name, lvl in ROSTER
            }
            local[rep] = register(client, f"{rep}-{suffix}-probe", level, ref=ref)
            ids = seed_state(client, local)
            token = local[rep]
            call = {
                "post_comment": lambda: client.post(
                    "/api/threads/t1/comments", json={"body": "b"}, headers=auth(token)),
                "like": lambda: client.post(
                    f"/api/comments/{ids['c_e']}/like", headers=auth(token)),
                "propose_cluster": lambda: client.post(
                    "/api/threads/t1/cluster-activities",
                    json={"moved_comment_id": ids["c_e"], "anchor_comment_id": ids["c_f"]},
                    headers=auth(token)),
                "review_cluster": lambda: client.post(
                    f"/api/cluster-activities/{ids['pending_activity']}/votes",
                    json={"verdict": "approve"}, headers=auth(token)),
                "cluster_review_queue": lambda: client.get(
                    f"/api/discussions/{ids['discussion']}/cluster-reviews",
                    headers=auth(token)),
                "summary_draft": lambda: client.get(
                    f"/api/clusters/{ids['cluster']}/summary-draft", headers=auth(token)),
                "summarize": lambda: client.post(
                    f"/api/clusters/{ids['cluster']}/summary",
                    json={"text": "s"}, headers=auth(token)),
                "propose_thread": lambda: client.post(
                    f"/api/discussions/{ids['discussion']}/thread-proposals",
                    json={"topic": "T", "guiding_question": "q", "source": "user_authored"},
                    headers=auth(token)),
                "review_thread": lambda: client.post(
                    f"/api/thread-proposals/{ids['proposal']}/votes",
                    json={"verdict": "approve"}, headers=auth(token)),
                "thread_review_queue": lambda: client.get(
                    f"/api/discussions/{ids['discussion']}/thread-reviews",
                    headers=auth(token)),
                "suggestion_pool": lambda: client.get(
                    f"/api/discussions/{ids['discussion']}/suggestion-pool",
                    headers=auth(token)),
            }[op]
            response = call()
            body = response.json()
            code = body.get("error", {}).get("code") if response.status_code >= 400 else None
            if level in allowed:
                assert code != "forbidden", (level, op, body)
            else:
                assert response.status_code == 403 and code == "forbidden", (level, op, body)


def test_idempotent_vote_retry_never_double_applies(client):
    create_discussion(client)
    tokens = register_roster(client)
    ids = seed_state(client, tokens)
    key = {"Idempotency-Key": "vote-1", **auth(tokens["bram"])}
    first = client.post(
        f"/api/cluster-activities/{ids['pending_activity']}/votes",
        json={"verdict": "approve"}, headers=key,
    )
    assert first.status_code == 200
    again = client.post(
        f"/api/cluster-activities/{ids['pending_activity']}/votes",
        json={"verdict": "approve"}, headers=key,
    )
    assert again.status_code == 200
    assert again.json() == first.json()
    assert again.json()["outcome"]["approve_count"] == 1
    # same for likes
    key = {"Idempotency-Key": "like-1", **auth(tokens["cara"])}
    first = client.post(f"/api/comments/{ids['c_e']}/like", headers=key)
    again = client.post(f"/api/comments/{ids['c_e']}/like", headers=key)
    assert first.json() == again.json()
    assert again.json()["like_count"] == 1


def test_lv1_review_queue_carries_both_snapshots(client):
    create_discussion(client)
    tokens = register_roster(client)
    ids = seed_state(client, tokens)
    queue = client.get(
        f"/api/discussions/{ids['discussion']}/cluster-reviews", headers=auth(tokens["bea"])
    ).json()["queue"]
    assert [a["activity_id"] for a in queue] == [ids["pending_activity"]]
    assert queue[0]["snapshot_before"] != queue[0]["snapshot_after"]
    assert any(item["kind"] == "cluster" for item in queue[0]["snapshot_after"])


def test_every_mutation_returns_seq_and_view(client):
    create_discussion(client)
    tokens = register_roster(client)
    response = client.post(
        "/api/threads/t1/comments", json={"body": "x"}, headers=auth(tokens["ana"])
    ).json()
    assert set(response) == {"comment", "seq", "view"}
    assert response["view"]["viewer"]["username"] == "ana"
    seq1 = response["seq"]
    response2 = client.post(
        "/api/threads/t1/comments", json={"body": "y"}, headers=auth(tokens["ana"])
    ).json()
    assert response2["seq"] == seq1 + 1


def test_concurrent_votes_transition_exactly_once(client):
    create_discussion(client)
    tokens = register_roster(client)
    extra = {}
    for i in range(4):
        extra[f"lv1x{i}"] = register(client, f"lv1x{i}", "LV1")
    tokens.update(extra)
    ids = seed_state(client, tokens)
    reviewers = ["bea", "ben", "bess", "bram", "lv1x0", "lv1x1", "lv1x2", "lv1x3"]

    def vote(name):
        return client.post(
            f"/api/cluster-activities/{ids['pending_activity']}/votes",
            json={"verdict": "approve"}, headers=auth(tokens[name]),
        )

    with ThreadPoolExecutor(max_workers=8) as pool:
        responses = list(pool.map(vote, reviewers))
    accepted = [r for r in responses if r.status_code == 200 and r.json()["outcome"]["status"] == "accepted"]
    stale = [r for r in responses if r.status_code == 409]
    assert len(accepted) == 1  # exactly one request crossed the threshold
    assert len(stale) == len(reviewers) - 3
    final = client.get(
        f"/api/discussions/{ids['discussion']}/export"
    ).json()["state"]
    activity = next(a for a in final["activities"] if a["activity_id"] == ids["pending_activity"])
    assert activity["status"] == "accepted"
    assert len(activity["approve_votes"]) == 3


def test_import_endpoint_roundtrip(client):
    create_discussion(client)
    tokens = register_roster(client)
    ids = seed_state(client, tokens)
    archive = client.get(f"/api/discussions/{ids['discussion']}/export").json()

    hub = DiscussionHub(store=EventStore(":memory:"), provider=stub_provider(),
                        config=EngineConfig(), clock=LogicalClock().next)
    with TestClient(create_app(hub)) as second:
        imported = second.post("/api/discussions/import", json={"archive": archive})
        assert imported.status_code == 201
        assert imported.json()["discussion_id"] == ids["discussion"]
        view = json.dumps(second.get(f"/api/discussions/{ids['discussion']}").json(), sort_keys=True)
        original = json.dumps(client.get(f"/api/discussions/{ids['discussion']}").json(), sort_keys=True)
        assert view == original
