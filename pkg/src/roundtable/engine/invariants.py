"""Structural invariant checks over engine state.

The simulation harness runs these after every applied action; unit and
property tests call them directly. A violation raises InvariantViolation
with enough context to reproduce.
"""

from __future__ import annotations

from .engine import DiscussionEngine
from .models import ActivityStatus, Level, ProposalStatus
from .views import project_view


class InvariantViolation(AssertionError):
    pass


def _fail(name: str, detail: str) -> None:
    raise InvariantViolation(f"{name}: {detail}")


def check_threshold_soundness(engine: DiscussionEngine) -> None:
    t_c = engine.config.cluster_approval_threshold
    d_c = engine.config.cluster_denial_threshold
    for a in engine.activities.values():
        approvals, declines = len(a.approve_votes), len(a.decline_votes)
        if a.status == ActivityStatus.ACCEPTED:
            if approvals != t_c or declines >= d_c:
                _fail("threshold-soundness", f"{a.activity_id} accepted at {approvals}/{declines}")
        elif a.status == ActivityStatus.DENIED:
            if declines != d_c or approvals >= t_c:
                _fail("threshold-soundness", f"{a.activity_id} denied at {approvals}/{declines}")
        else:  # pending or superseded never reached a threshold
            if approvals >= t_c or declines >= d_c:
                _fail(
                    "threshold-soundness",
                    f"{a.activity_id} is {a.status.value} at {approvals}/{declines}",
                )
    t_t = engine.config.thread_approval_threshold
    d_t = engine.config.thread_denial_threshold
    for p in engine.proposals.values():
        approvals, declines = len(p.approve_votes), len(p.decline_votes)
        if p.status == ProposalStatus.ACCEPTED and (approvals != t_t or declines >= d_t):
            _fail("threshold-soundness", f"{p.proposal_id} accepted at {approvals}/{declines}")
        if p.status == ProposalStatus.DENIED and (declines != d_t or approvals >= t_t):
            _fail("threshold-soundness", f"{p.proposal_id} denied at {approvals}/{declines}")
        if p.status == ProposalStatus.PENDING and (approvals >= t_t or declines >= d_t):
            _fail("threshold-soundness", f"{p.proposal_id} pending at {approvals}/{declines}")


def check_vote_integrity(engine: DiscussionEngine) -> None:
    items = [(a.activity_id, a.proposer_id, a.approve_votes, a.decline_votes)
             for a in engine.activities.values()]
    items += [(p.proposal_id, p.proposer_id, p.approve_votes, p.decline_votes)
              for p in engine.proposals.values()]
    for item_id, proposer, approvals, declines in items:
        if len(set(approvals)) != len(approvals) or len(set(declines)) != len(declines):
            _fail("vote-integrity", f"duplicate votes on {item_id}")
        if set(approvals) & set(declines):
            _fail("vote-integrity", f"reviewer on both sides of {item_id}")
        if proposer in approvals or proposer in declines:
            _fail("vote-integrity", f"proposer voted on own item {item_id}")


def check_single_membership(engine: DiscussionEngine) -> None:
    seen: dict[str, str] = {}
    for cluster in engine.clusters.values():
        if not cluster.visible:
            continue
        if len(cluster.member_comment_ids) < 2:
            _fail("single-membership", f"visible cluster {cluster.cluster_id} below 2 members")
        for cid in cluster.member_comment_ids:
            if cid in seen:
                _fail("single-membership", f"{cid} in both {seen[cid]} and {cluster.cluster_id}")
            seen[cid] = cluster.cluster_id


def check_reply_cohesion(engine: DiscussionEngine) -> None:
    cluster_members = {
        cid for k in engine.clusters.values() if k.visible for cid in k.member_comment_ids
    }
    for comment in engine.comments.values():
        if comment.parent_id is None:
            continue
        parent = engine.comments.get(comment.parent_id)
        if parent is None or parent.parent_id is not None:
            _fail("reply-cohesion", f"{comment.comment_id} has a non-top-level parent")
        if comment.comment_id not in parent.reply_ids:
            _fail("reply-cohesion", f"{comment.comment_id} unreachable under its parent")
        if comment.comment_id in cluster_members:
            _fail("reply-cohesion", f"reply {comment.comment_id} is a direct cluster member")


def check_layout_consistency(engine: DiscussionEngine) -> None:
    """Every live top-level comment appears exactly once: standalone or clustered."""
    for thread in engine.threads.values():
        placed: list[str] = []
        for kind, ref in thread.layout:
            if kind == "comment":
                placed.append(ref)
            else:
                cluster = engine.clusters.get(ref)
                if cluster is None or not cluster.visible:
                    _fail("layout", f"thread {thread.thread_id} references dead cluster {ref}")
                placed.extend(cluster.member_comment_ids)
        expected = [
            c.comment_id
            for c in engine.comments.values()
            if c.thread_id == thread.thread_id and c.parent_id is None
        ]
        if sorted(placed) != sorted(expected):
            _fail(
                "layout",
                f"thread {thread.thread_id} arrangement mismatch: {sorted(placed)} vs {sorted(expected)}",
            )


def check_frozen_summaries(engine: DiscussionEngine) -> None:
    for cluster in engine.clusters.values():
        if not cluster.visible or not cluster.summarized:
            continue
        if cluster.frozen_member_ids is None:
            _fail("frozen-summary", f"{cluster.cluster_id} summarized without frozen snapshot")
        if cluster.member_comment_ids != cluster.frozen_member_ids:
            _fail(
                "frozen-summary",
                f"{cluster.cluster_id} membership changed after summarize: "
                f"{cluster.member_comment_ids} vs {cluster.frozen_member_ids}",
            )
        replies = sorted(
            rid for cid in cluster.member_comment_ids for rid in engine.comments[cid].reply_ids
        )
        if replies != cluster.frozen_reply_ids:
            _fail(
                "frozen-summary",
                f"{cluster.cluster_id} gained replies after summarize: "
                f"{replies} vs {cluster.frozen_reply_ids}",
            )
        if cluster.summary_id not in engine.summaries:
            _fail("frozen-summary", f"{cluster.cluster_id} points at missing summary")


def check_visibility_gate(engine: DiscussionEngine, user_ids: list[str] | None = None) -> None:
    """Pending activities appear only in the proposer's and LV1 projections.

    ``user_ids`` restricts the check to a sample of viewers (the caller
    picks representatives when checking after every action).
    """
    pending = [a for a in engine.activities.values() if a.status == ActivityStatus.PENDING]
    users = (
        list(engine.users.values())
        if user_ids is None
        else [engine.users[uid] for uid in user_ids]
    )
    for user in users:
        view = project_view(engine, user.user_id)
        mine = {a["activity_id"] for a in view.get("my_pending_activities", [])}
        queue = {a["activity_id"] for a in view.get("cluster_review_queue", [])}
        for activity in pending:
            if user.user_id == activity.proposer_id:
                if activity.activity_id not in mine:
                    _fail("visibility", f"proposer lost sight of {activity.activity_id}")
            elif user.level == Level.LV1:
                if activity.activity_id not in queue:
                    _fail("visibility", f"LV1 queue missing {activity.activity_id}")
            else:
                if activity.activity_id in mine or activity.activity_id in queue:
                    _fail(
                        "visibility",
                        f"{activity.activity_id} leaked to {user.username} ({user.level.value})",
                    )
        # The shared arrangement never contains unfinalized groupings.
        for thread in view["threads"]:
            for item in thread["layout"]:
                if item["kind"] == "cluster" and item["cluster_id"] is None:
                    _fail("visibility", "tentative cluster rendered in shared layout")


def check_conservation(engine: DiscussionEngine) -> None:
    statuses = [a.status for a in engine.activities.values()]
    total = len(statuses)
    partition = sum(
        statuses.count(s)
        for s in (
            ActivityStatus.ACCEPTED,
            ActivityStatus.PENDING,
            ActivityStatus.DENIED,
            ActivityStatus.SUPERSEDED,
        )
    )
    if partition != total:
        _fail("conservation", f"activity statuses {partition} != total {total}")
    if engine.clusters_created < len([k for k in engine.clusters.values() if k.visible]):
        _fail("conservation", "visible clusters exceed creation count")
    accepted = statuses.count(ActivityStatus.ACCEPTED)
    if engine.clusters_created > accepted:
        _fail("conservation", f"{engine.clusters_created} clusters from {accepted} accepted moves")


FAST_CHECKS = [
    check_threshold_soundness,
    check_vote_integrity,
    check_single_membership,
    check_frozen_summaries,
    check_conservation,
]

ALL_CHECKS = FAST_CHECKS + [
    check_reply_cohesion,
    check_layout_consistency,
    check_visibility_gate,
]


def sample_viewers(engine: DiscussionEngine) -> list[str]:
    """Representative viewers for a cheap per-action visibility check:
    every proposer of a pending activity plus one user per level."""
    chosen: dict[str, None] = {}
    for activity in engine.activities.values():
        if activity.status == ActivityStatus.PENDING:
            chosen.setdefault(activity.proposer_id)
    seen_levels: set[Level] = set()
    for user in engine.users.values():
        if user.level not in seen_levels and user.user_id not in chosen:
            chosen.setdefault(user.user_id)
            seen_levels.add(user.level)
    return list(chosen)


def check_invariants(
    engine: DiscussionEngine, full: bool = True, sampled_visibility: bool = False
) -> None:
    """Run the invariant suite.

    ``full`` adds the structural layout checks and the visibility gate;
    ``sampled_visibility`` restricts the gate to representative viewers.
    """
    for check in FAST_CHECKS:
        check(engine)
    if full:
        check_reply_cohesion(engine)
        check_layout_consistency(engine)
        if sampled_visibility:
            check_visibility_gate(engine, sample_viewers(engine))
        else:
            check_visibility_gate(engine)
