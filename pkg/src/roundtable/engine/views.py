"""Per-user projections of discussion state.

Everyone sees the shared arrangement (accepted clusters, summaries,
threads). On top of that:

* the LV0 proposer sees their own pending arrangements,
* LV1 users see the pending cluster-review queue with both snapshots,
* LV2 users see the pending thread-review queue and the suggestion pool.

Pending clustering activities never leak into anyone else's view. All
returned structures are freshly built plain data, safe to hand across
threads or serialize.
"""

from __future__ import annotations

from .engine import DiscussionEngine
from .errors import NotFoundError
from .models import ActivityStatus, Comment, Level, PoolState, ProposalStatus


def render_comment(engine: DiscussionEngine, comment: Comment, viewer_id: str) -> dict:
    return {
        "comment_id": comment.comment_id,
        "thread_id": comment.thread_id,
        "author_id": comment.author_id,
        "author": engine.users[comment.author_id].username,
        "body": None if comment.deleted else comment.body,
        "deleted": comment.deleted,
        "parent_id": comment.parent_id,
        "created_at": comment.created_at,
        "edited_at": comment.edited_at,
        "like_count": len(comment.like_user_ids),
        "liked_by_viewer": viewer_id in comment.like_user_ids,
        "replies": [
            render_comment(engine, engine.comments[rid], viewer_id)
            for rid in comment.reply_ids
        ],
    }


def render_summary(engine: DiscussionEngine, summary_id: str) -> dict:
    summary = engine.summaries[summary_id]
    return {
        "summary_id": summary.summary_id,
        "cluster_id": summary.cluster_id,
        "thread_id": summary.thread_id,
        "author_id": summary.author_id,
        "author": engine.users[summary.author_id].username,
        "text": summary.text,
        "ai_suggested_text": summary.ai_suggested_text,
        "created_at": summary.created_at,
    }


def render_layout(engine: DiscussionEngine, thread_id: str, viewer_id: str) -> list[dict]:
    items: list[dict] = []
    for kind, ref in engine.threads[thread_id].layout:
        if kind == "comment":
            items.append(
                {"kind": "comment", "comment": render_comment(engine, engine.comments[ref], viewer_id)}
            )
        else:
            cluster = engine.clusters[ref]
            items.append(
                {
                    "kind": "cluster",
                    "cluster_id": cluster.cluster_id,
                    "summarized": cluster.summarized,
                    "summary": render_summary(engine, cluster.summary_id)
                    if cluster.summary_id
                    else None,
                    "comments": [
                        render_comment(engine, engine.comments[cid], viewer_id)
                        for cid in cluster.member_comment_ids
                    ],
                }
            )
    return items


def _render_activity(engine: DiscussionEngine, activity_id: str, viewer_id: str) -> dict:
    activity = engine.activities[activity_id]
    my_vote = None
    if viewer_id in activity.approve_votes:
        my_vote = "approve"
    elif viewer_id in activity.decline_votes:
        my_vote = "decline"
    return {
        "activity_id": activity.activity_id,
        "thread_id": activity.thread_id,
        "proposer_id": activity.proposer_id,
        "moved_comment_id": activity.moved_comment_id,
        "anchor_comment_id": activity.anchor_comment_id,
        "target_cluster_id": activity.target_cluster_id,
        "status": activity.status.value,
        "created_at": activity.created_at,
        "approve_count": len(activity.approve_votes),
        "decline_count": len(activity.decline_votes),
        "snapshot_before": [dict(item) for item in activity.snapshot_before],
        "snapshot_after": [dict(item) for item in activity.snapshot_after],
        "my_vote": my_vote,
    }


def _render_proposal(engine: DiscussionEngine, proposal_id: str, viewer_id: str) -> dict:
    proposal = engine.proposals[proposal_id]
    my_vote = None
    if viewer_id in proposal.approve_votes:
        my_vote = "approve"
    elif viewer_id in proposal.decline_votes:
        my_vote = "decline"
    return {
        "proposal_id": proposal.proposal_id,
        "proposer_id": proposal.proposer_id,
        "proposer": engine.users[proposal.proposer_id].username,
        "topic": proposal.topic,
        "guiding_question": proposal.guiding_question,
        "source": proposal.source.value,
        "status": proposal.status.value,
        "created_at": proposal.created_at,
        "approve_count": len(proposal.approve_votes),
        "decline_count": len(proposal.decline_votes),
        "created_thread_id": proposal.created_thread_id,
        "my_vote": my_vote,
    }


def project_view(engine: DiscussionEngine, user_id: str) -> dict:
    user = engine.users.get(user_id)
    if user is None:
        raise NotFoundError(f"unknown user: {user_id}")

    threads = []
    for thread in engine.ordered_threads():
        summaries = [
            render_summary(engine, s.summary_id)
            for s in engine.summaries.values()
            if s.thread_id == thread.thread_id and not s.removed
        ]
        threads.append(
            {
                "thread_id": thread.thread_id,
                "topic": thread.topic,
                "guiding_question": thread.guiding_question,
                "origin": thread.origin.value,
                "ordering_index": thread.ordering_index,
                "created_at": thread.created_at,
                "summaries": summaries,
                "layout": render_layout(engine, thread.thread_id, user_id),
            }
        )

    view: dict = {
        "discussion_id": engine.discussion_id,
        "article_ref": engine.article_ref,
        "viewer": user.to_dict(),
        "threads": threads,
    }

    if user.level == Level.LV0:
        view["my_pending_activities"] = [
            _render_activity(engine, a.activity_id, user_id)
            for a in engine.activities.values()
            if a.proposer_id == user_id and a.status == ActivityStatus.PENDING
        ]
    if user.level == Level.LV1:
        view["cluster_review_queue"] = [
            _render_activity(engine, a.activity_id, user_id)
            for a in engine.activities.values()
            if a.status == ActivityStatus.PENDING
        ]
    if user.level == Level.LV2:
        view["thread_review_queue"] = [
            _render_proposal(engine, p.proposal_id, user_id)
            for p in engine.proposals.values()
            if p.status == ProposalStatus.PENDING and p.proposer_id != user_id
        ]
        view["my_thread_proposals"] = [
            _render_proposal(engine, p.proposal_id, user_id)
            for p in engine.proposals.values()
            if p.proposer_id == user_id
        ]
        view["suggestion_pool"] = [
            {"topic": e.topic, "question": e.question}
            for e in engine.suggestion_pool
            if e.state == PoolState.AVAILABLE
        ]
    return view
