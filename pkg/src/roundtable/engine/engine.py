"""The discussion state machine.

One engine instance owns one article-bound discussion: its threads,
comments, clusters, summaries, and the two review lifecycles
(clustering activities reviewed by LV1 users, thread proposals reviewed
by LV2 users). All mutating operations take an explicit ``at`` timestamp
and never consult the clock or randomness, so replaying the same
operation sequence always rebuilds the same state.

Capability matrix (who may do what):

    write / reply / like / edit own / delete own   LV0 LV1 LV2
    propose cluster move                           LV0
    review cluster moves                               LV1
    summarize a finalized cluster                      LV1
    propose a new thread                                   LV2
    review thread proposals                                LV2
"""

from __future__ import annotations

import hashlib

from .errors import (
    AlreadyVotedError,
    ClusterFrozenError,
    ConflictError,
    DepthViolationError,
    ForbiddenError,
    GoneError,
    InvalidTargetError,
    NotFoundError,
    NotTopLevelError,
    ProviderError,
    StaleActivityError,
    ValidationError,
)
from .models import (
    ActivityStatus,
    Cluster,
    ClusteringActivity,
    Comment,
    EngineConfig,
    Level,
    PoolEntry,
    PoolState,
    ProposalSource,
    ProposalStatus,
    ReviewOutcome,
    Summary,
    Thread,
    ThreadOrigin,
    ThreadProposal,
    User,
)

APPROVE = "approve"
DECLINE = "decline"


def canonical_article_ref(ref: str) -> str:
    """Normalize an article identifier: trim, lowercase, drop a fragment."""
    ref = ref.strip().lower()
    if "#" in ref:
        ref = ref.split("#", 1)[0]
    return ref.rstrip("/")


def discussion_id_for(article_ref: str) -> str:
    digest = hashlib.sha1(canonical_article_ref(article_ref).encode("utf-8")).hexdigest()
    return f"d-{digest[:12]}"


class DiscussionEngine:
    def __init__(
        self,
        article_ref: str,
        article_text: str,
        topic_pairs: list[tuple[str, str]],
        created_at: str,
        config: EngineConfig | None = None,
    ):
        config = config or EngineConfig()
        if not article_ref.strip():
            raise ValidationError("article_ref must be non-empty")
        pairs = [(str(t), str(q)) for t, q in topic_pairs]
        if len(pairs) < config.initial_topic_count:
            raise ProviderError(
                f"provider yielded {len(pairs)} topic pairs, "
                f"need at least {config.initial_topic_count}"
            )
        if any(not t.strip() or not q.strip() for t, q in pairs):
            raise ProviderError("provider yielded an empty topic or question")

        self.config = config
        self.article_ref = canonical_article_ref(article_ref)
        self.article_text = article_text
        self.discussion_id = discussion_id_for(article_ref)
        self.created_at = created_at

        self.users: dict[str, User] = {}
        self.threads: dict[str, Thread] = {}
        self.comments: dict[str, Comment] = {}
        self.clusters: dict[str, Cluster] = {}
        self.activities: dict[str, ClusteringActivity] = {}
        self.summaries: dict[str, Summary] = {}
        self.proposals: dict[str, ThreadProposal] = {}
        self.suggestion_pool: list[PoolEntry] = []
        self.seq = 0
        self.clusters_created = 0
        self.summaries_created = 0
        self._counters: dict[str, int] = {}

        for index, (topic, question) in enumerate(pairs):
            if index < config.initial_topic_count:
                self._create_thread(topic, question, ThreadOrigin.INITIAL, None, created_at)
            else:
                self.suggestion_pool.append(PoolEntry(topic=topic, question=question))

    # ------------------------------------------------------------------
    # lookups

    def _next_id(self, prefix: str) -> str:
        n = self._counters.get(prefix, 0) + 1
        self._counters[prefix] = n
        return f"{prefix}{n}"

    def _user(self, user_id: str) -> User:
        user = self.users.get(user_id)
        if user is None:
            raise NotFoundError(f"unknown user: {user_id}")
        return user

    def _thread(self, thread_id: str) -> Thread:
        thread = self.threads.get(thread_id)
        if thread is None:
            raise NotFoundError(f"unknown thread: {thread_id}")
        return thread

    def _comment(self, comment_id: str) -> Comment:
        comment = self.comments.get(comment_id)
        if comment is None:
            raise NotFoundError(f"unknown comment: {comment_id}")
        return comment

    def _activity(self, activity_id: str) -> ClusteringActivity:
        activity = self.activities.get(activity_id)
        if activity is None:
            raise NotFoundError(f"unknown activity: {activity_id}")
        return activity

    def _proposal(self, proposal_id: str) -> ThreadProposal:
        proposal = self.proposals.get(proposal_id)
        if proposal is None:
            raise NotFoundError(f"unknown proposal: {proposal_id}")
        return proposal

    def cluster_of(self, comment_id: str) -> Cluster | None:
        """The visible cluster the comment is a member of, if any."""
        for cluster in self.clusters.values():
            if cluster.visible and comment_id in cluster.member_comment_ids:
                return cluster
        return None

    def ordered_threads(self) -> list[Thread]:
        return sorted(self.threads.values(), key=lambda t: t.ordering_index)

    # ------------------------------------------------------------------
    # registration

    def register_user(self, username: str, level: Level | str, at: str) -> User:
        if not username or not username.strip():
            raise ValidationError("username must be non-empty")
        level = Level.parse(level)
        username = username.strip()
        if any(u.username == username for u in self.users.values()):
            raise ConflictError(f"username already taken: {username}")
        self.seq += 1
        user = User(user_id=self._next_id("u"), username=username, level=level)
        self.users[user.user_id] = user
        return user

    def user_by_name(self, username: str) -> User | None:
        for user in self.users.values():
            if user.username == username:
                return user
        return None

    # ------------------------------------------------------------------
    # comments

    def post_comment(
        self,
        user_id: str,
        thread_id: str,
        body: str,
        parent_id: str | None = None,
        at: str = "",
    ) -> Comment:
        self._user(user_id)
        thread = self._thread(thread_id)
        if not body or not body.strip():
            raise ValidationError("comment body must be non-empty")
        parent = None
        if parent_id is not None:
            parent = self._comment(parent_id)
            if parent.deleted:
                raise GoneError("cannot reply to a deleted comment")
            if not parent.is_top_level:
                raise DepthViolationError("replies to replies are not supported")
            if parent.thread_id != thread_id:
                raise ValidationError("parent comment belongs to a different thread")
            cluster = self.cluster_of(parent_id)
            if cluster is not None and cluster.summarized:
                raise ClusterFrozenError("cluster is summarized; no further replies")
        self.seq += 1
        comment = Comment(
            comment_id=self._next_id("c"),
            thread_id=thread_id,
            author_id=user_id,
            body=body,
            parent_id=parent_id,
            created_at=at,
        )
        self.comments[comment.comment_id] = comment
        if parent is None:
            thread.layout.append(("comment", comment.comment_id))
        else:
            parent.reply_ids.append(comment.comment_id)
        return comment

    def edit_comment(self, user_id: str, comment_id: str, new_body: str, at: str = "") -> Comment:
        self._user(user_id)
        comment = self._comment(comment_id)
        if comment.deleted:
            raise GoneError("comment was deleted")
        if comment.author_id != user_id:
            raise ForbiddenError("only the author may edit a comment")
        if not new_body or not new_body.strip():
            raise ValidationError("comment body must be non-empty")
        self.seq += 1
        comment.body = new_body
        comment.edited_at = at
        return comment

    def delete_comment(self, user_id: str, comment_id: str, at: str = "") -> Comment:
        self._user(user_id)
        comment = self._comment(comment_id)
        if comment.deleted:
            raise GoneError("comment already deleted")
        if comment.author_id != user_id:
            raise ForbiddenError("only the author may delete a comment")
        self.seq += 1
        comment.deleted = True
        comment.edited_at = at
        # Pending moves that reference the tombstone can no longer apply.
        self._supersede_pending(
            comment_ids={comment_id}, cluster_ids=set(), at=at, exclude=None
        )
        cluster = self.cluster_of(comment_id)
        if cluster is not None and self._alive_member_count(cluster) < 2:
            self._dissolve_cluster(cluster, at)
        return comment

    def toggle_like(self, user_id: str, comment_id: str, at: str = "") -> int:
        self._user(user_id)
        comment = self._comment(comment_id)
        if comment.deleted:
            raise GoneError("comment was deleted")
        self.seq += 1
        if user_id in comment.like_user_ids:
            comment.like_user_ids.remove(user_id)
        else:
            comment.like_user_ids.append(user_id)
        return len(comment.like_user_ids)

    # ------------------------------------------------------------------
    # cluster lifecycle

    def propose_cluster(
        self,
        user_id: str,
        thread_id: str,
        moved_comment_id: str,
        anchor_comment_id: str | None = None,
        target_cluster_id: str | None = None,
        at: str = "",
    ) -> ClusteringActivity:
        user = self._user(user_id)
        if user.level != Level.LV0:
            raise ForbiddenError("only LV0 users propose cluster moves")
        thread = self._thread(thread_id)
        if (anchor_comment_id is None) == (target_cluster_id is None):
            raise ValidationError("exactly one of anchor comment or target cluster required")

        moved = self._comment(moved_comment_id)
        if moved.thread_id != thread_id:
            raise ValidationError("moved comment belongs to a different thread")
        if not moved.is_top_level:
            raise NotTopLevelError("reply-level comments cannot be moved")
        if moved.deleted:
            raise GoneError("moved comment was deleted")
        moved_cluster = self.cluster_of(moved_comment_id)
        if moved_cluster is not None and moved_cluster.summarized:
            raise ClusterFrozenError("moved comment sits in a summarized cluster")

        if anchor_comment_id is not None:
            anchor = self._comment(anchor_comment_id)
            if anchor_comment_id == moved_comment_id:
                raise InvalidTargetError("cannot anchor a comment onto itself")
            if anchor.thread_id != thread_id:
                raise InvalidTargetError("anchor belongs to a different thread")
            if not anchor.is_top_level or anchor.deleted:
                raise InvalidTargetError("anchor must be a live top-level comment")
            if self.cluster_of(anchor_comment_id) is not None:
                raise InvalidTargetError(
                    "anchor is already clustered; target the cluster instead"
                )
        else:
            target = self.clusters.get(target_cluster_id or "")
            if target is None or not target.visible:
                raise NotFoundError(f"unknown cluster: {target_cluster_id}")
            if target.thread_id != thread_id:
                raise InvalidTargetError("target cluster belongs to a different thread")
            if target.summarized:
                raise ClusterFrozenError("target cluster is summarized")
            if moved_comment_id in target.member_comment_ids:
                raise InvalidTargetError("comment is already a member of the target cluster")

        before = self.layout_snapshot(thread_id)
        after = self._preview_move(before, moved_comment_id, anchor_comment_id, target_cluster_id)
        self.seq += 1
        activity = ClusteringActivity(
            activity_id=self._next_id("a"),
            thread_id=thread_id,
            proposer_id=user_id,
            moved_comment_id=moved_comment_id,
            anchor_comment_id=anchor_comment_id,
            target_cluster_id=target_cluster_id,
            snapshot_before=before,
            snapshot_after=after,
            created_at=at,
        )
        self.activities[activity.activity_id] = activity
        return activity

    def review_cluster(
        self, user_id: str, activity_id: str, verdict: str, at: str = ""
    ) -> ReviewOutcome:
        user = self._user(user_id)
        if user.level != Level.LV1:
            raise ForbiddenError("only LV1 users review cluster moves")
        activity = self._activity(activity_id)
        if activity.status != ActivityStatus.PENDING:
            raise StaleActivityError(f"activity is {activity.status.value}")
        if user_id == activity.proposer_id:
            raise ForbiddenError("proposers cannot review their own activity")
        if user_id in activity.approve_votes or user_id in activity.decline_votes:
            raise AlreadyVotedError("reviewer already voted on this activity")
        if verdict not in (APPROVE, DECLINE):
            raise ValidationError(f"verdict must be approve or decline, got {verdict!r}")

        self.seq += 1
        cluster_id = None
        if verdict == APPROVE:
            activity.approve_votes.append(user_id)
            if len(activity.approve_votes) >= self.config.cluster_approval_threshold:
                activity.status = ActivityStatus.ACCEPTED
                activity.resolved_at = at
                cluster_id = self._apply_accepted_move(activity, at)
                activity.result_cluster_id = cluster_id
        else:
            activity.decline_votes.append(user_id)
            if len(activity.decline_votes) >= self.config.cluster_denial_threshold:
                activity.status = ActivityStatus.DENIED
                activity.resolved_at = at
        return ReviewOutcome(
            status=activity.status.value,
            approve_count=len(activity.approve_votes),
            decline_count=len(activity.decline_votes),
            cluster_id=cluster_id,
        )

    def summarize_cluster(
        self, user_id: str, cluster_id: str, text: str, ai_suggested_text: str, at: str = ""
    ) -> Summary:
        user = self._user(user_id)
        if user.level != Level.LV1:
            raise ForbiddenError("only LV1 users summarize clusters")
        cluster = self.clusters.get(cluster_id)
        if cluster is None or not cluster.visible:
            raise NotFoundError(f"unknown cluster: {cluster_id}")
        if cluster.summarized:
            raise ConflictError("cluster already has a summary")
        if not text or not text.strip():
            raise ValidationError("summary text must be non-empty")
        self.seq += 1
        summary = Summary(
            summary_id=self._next_id("s"),
            cluster_id=cluster_id,
            author_id=user_id,
            text=text,
            ai_suggested_text=ai_suggested_text,
            created_at=at,
            thread_id=cluster.thread_id,
        )
        self.summaries[summary.summary_id] = summary
        cluster.summary_id = summary.summary_id
        cluster.frozen_member_ids = list(cluster.member_comment_ids)
        cluster.frozen_reply_ids = sorted(
            rid for cid in cluster.member_comment_ids for rid in self.comments[cid].reply_ids
        )
        self.summaries_created += 1
        # Freezing invalidates pending moves into or out of this cluster.
        self._supersede_pending(
            comment_ids=set(cluster.member_comment_ids),
            cluster_ids={cluster_id},
            at=at,
            exclude=None,
        )
        return summary

    # ------------------------------------------------------------------
    # thread lifecycle

    def propose_thread(
        self,
        user_id: str,
        topic: str,
        guiding_question: str,
        source: ProposalSource | str,
        at: str = "",
    ) -> ThreadProposal:
        user = self._user(user_id)
        if user.level != Level.LV2:
            raise ForbiddenError("only LV2 users propose threads")
        source = ProposalSource(source)
        if not topic or not topic.strip() or not guiding_question or not guiding_question.strip():
            raise ValidationError("topic and guiding question must be non-empty")
        if source == ProposalSource.AI_SUGGESTED:
            entry = self._pool_entry(topic, guiding_question, PoolState.AVAILABLE)
            if entry is None:
                raise ValidationError("suggested pair is not available in the suggestion pool")
            entry.state = PoolState.IN_USE
        self.seq += 1
        proposal = ThreadProposal(
            proposal_id=self._next_id("p"),
            proposer_id=user_id,
            topic=topic,
            guiding_question=guiding_question,
            source=source,
            created_at=at,
        )
        self.proposals[proposal.proposal_id] = proposal
        return proposal

    def review_thread(
        self, user_id: str, proposal_id: str, verdict: str, at: str = ""
    ) -> ReviewOutcome:
        user = self._user(user_id)
        if user.level != Level.LV2:
            raise ForbiddenError("only LV2 users review thread proposals")
        proposal = self._proposal(proposal_id)
        if proposal.status != ProposalStatus.PENDING:
            raise StaleActivityError(f"proposal is {proposal.status.value}")
        if user_id == proposal.proposer_id:
            raise ForbiddenError("proposers cannot review their own proposal")
        if user_id in proposal.approve_votes or user_id in proposal.decline_votes:
            raise AlreadyVotedError("reviewer already voted on this proposal")
        if verdict not in (APPROVE, DECLINE):
            raise ValidationError(f"verdict must be approve or decline, got {verdict!r}")

        self.seq += 1
        thread_id = None
        if verdict == APPROVE:
            proposal.approve_votes.append(user_id)
            if len(proposal.approve_votes) >= self.config.thread_approval_threshold:
                proposal.status = ProposalStatus.ACCEPTED
                proposal.resolved_at = at
                thread = self._create_thread(
                    proposal.topic,
                    proposal.guiding_question,
                    ThreadOrigin.USER_CREATED,
                    proposal.proposer_id,
                    at,
                )
                proposal.created_thread_id = thread.thread_id
                thread_id = thread.thread_id
                if proposal.source == ProposalSource.AI_SUGGESTED:
                    entry = self._pool_entry(
                        proposal.topic, proposal.guiding_question, PoolState.IN_USE
                    )
                    if entry is not None:
                        entry.state = PoolState.CONSUMED
        else:
            proposal.decline_votes.append(user_id)
            if len(proposal.decline_votes) >= self.config.thread_denial_threshold:
                proposal.status = ProposalStatus.DENIED
                proposal.resolved_at = at
                if proposal.source == ProposalSource.AI_SUGGESTED:
                    # The suggestion goes back on offer.
                    entry = self._pool_entry(
                        proposal.topic, proposal.guiding_question, PoolState.IN_USE
                    )
                    if entry is not None:
                        entry.state = PoolState.AVAILABLE
        return ReviewOutcome(
            status=proposal.status.value,
            approve_count=len(proposal.approve_votes),
            decline_count=len(proposal.decline_votes),
            thread_id=thread_id,
        )

    # ------------------------------------------------------------------
    # arrangement mechanics

    def layout_snapshot(self, thread_id: str) -> list[dict]:
        """The thread's shared top-level arrangement as plain data."""
        items: list[dict] = []
        for kind, ref in self._thread(thread_id).layout:
            if kind == "comment":
                items.append({"kind": "comment", "comment_id": ref})
            else:
                cluster = self.clusters[ref]
                items.append(
                    {
                        "kind": "cluster",
                        "cluster_id": ref,
                        "member_comment_ids": list(cluster.member_comment_ids),
                    }
                )
        return items

    def _preview_move(
        self,
        items: list[dict],
        moved_id: str,
        anchor_id: str | None,
        target_cluster_id: str | None,
    ) -> list[dict]:
        """Arrangement after the move, computed without touching shared state."""
        result = [dict(item, member_comment_ids=list(item.get("member_comment_ids", [])))
                  if item["kind"] == "cluster" else dict(item)
                  for item in items]
        # Detach the moved comment from wherever it sits.
        detached = []
        for i, item in enumerate(result):
            if item["kind"] == "comment" and item["comment_id"] == moved_id:
                result.pop(i)
                break
            if item["kind"] == "cluster" and moved_id in item["member_comment_ids"]:
                item["member_comment_ids"].remove(moved_id)
                alive = [
                    cid for cid in item["member_comment_ids"] if not self.comments[cid].deleted
                ]
                if len(alive) < 2:
                    # Source cluster dissolves in the preview.
                    detached = [
                        {"kind": "comment", "comment_id": cid}
                        for cid in item["member_comment_ids"]
                    ]
                    result[i : i + 1] = detached
                break
        if anchor_id is not None:
            for i, item in enumerate(result):
                if item["kind"] == "comment" and item["comment_id"] == anchor_id:
                    result[i] = {
                        "kind": "cluster",
                        "cluster_id": None,
                        "member_comment_ids": [anchor_id, moved_id],
                    }
                    break
        else:
            for item in result:
                if item["kind"] == "cluster" and item["cluster_id"] == target_cluster_id:
                    item["member_comment_ids"].append(moved_id)
                    break
        return result

    def _apply_accepted_move(self, activity: ClusteringActivity, at: str) -> str:
        """Apply an accepted activity to the shared arrangement.

        Returns the cluster id the move produced or extended. Raises
        StaleActivityError (after marking the activity superseded) if the
        referenced entities are no longer in a movable state; eager
        supersession makes that unreachable in normal operation.
        """
        thread = self._thread(activity.thread_id)
        moved_id = activity.moved_comment_id
        moved = self.comments[moved_id]
        relocated: set[str] = {moved_id}

        valid = not moved.deleted
        target = None
        if activity.target_cluster_id is not None:
            target = self.clusters.get(activity.target_cluster_id)
            valid = valid and target is not None and target.visible and not target.summarized
        else:
            anchor = self.comments.get(activity.anchor_comment_id or "")
            valid = valid and anchor is not None and not anchor.deleted
            valid = valid and self.cluster_of(activity.anchor_comment_id) is None
        source_cluster = self.cluster_of(moved_id)
        valid = valid and (source_cluster is None or not source_cluster.summarized)
        if not valid:
            activity.status = ActivityStatus.SUPERSEDED
            activity.resolved_at = at
            raise StaleActivityError("activity no longer applies to the arrangement")

        # Detach from the current position.
        if source_cluster is not None:
            source_cluster.member_comment_ids.remove(moved_id)
            if self._alive_member_count(source_cluster) < 2:
                relocated |= set(source_cluster.member_comment_ids)
                self._dissolve_cluster(source_cluster, at)
        else:
            thread.layout.remove(("comment", moved_id))

        if activity.anchor_comment_id is not None:
            anchor_id = activity.anchor_comment_id
            relocated.add(anchor_id)
            cluster = Cluster(
                cluster_id=self._next_id("k"),
                thread_id=thread.thread_id,
                member_comment_ids=[anchor_id, moved_id],
                contributing_activity_ids=[activity.activity_id],
            )
            self.clusters[cluster.cluster_id] = cluster
            self.clusters_created += 1
            index = thread.layout.index(("comment", anchor_id))
            thread.layout[index] = ("cluster", cluster.cluster_id)
            result_id = cluster.cluster_id
        else:
            assert target is not None
            target.member_comment_ids.append(moved_id)
            target.contributing_activity_ids.append(activity.activity_id)
            result_id = target.cluster_id

        self._supersede_pending(
            comment_ids=relocated, cluster_ids=set(), at=at, exclude=activity.activity_id
        )
        return result_id

    def _alive_member_count(self, cluster: Cluster) -> int:
        return sum(1 for cid in cluster.member_comment_ids if not self.comments[cid].deleted)

    def _dissolve_cluster(self, cluster: Cluster, at: str) -> None:
        """Break a cluster up: members return to top level, summary is removed."""
        thread = self.threads[cluster.thread_id]
        index = thread.layout.index(("cluster", cluster.cluster_id))
        thread.layout[index : index + 1] = [
            ("comment", cid) for cid in cluster.member_comment_ids
        ]
        cluster.visible = False
        if cluster.summary_id is not None:
            self.summaries[cluster.summary_id].removed = True
            cluster.summary_id = None
            cluster.frozen_member_ids = None
            cluster.frozen_reply_ids = None
        self._supersede_pending(
            comment_ids=set(cluster.member_comment_ids),
            cluster_ids={cluster.cluster_id},
            at=at,
            exclude=None,
        )

    def _supersede_pending(
        self,
        comment_ids: set[str],
        cluster_ids: set[str],
        at: str,
        exclude: str | None,
    ) -> None:
        """Mark pending activities stale when their referenced pieces moved."""
        for activity in self.activities.values():
            if activity.status != ActivityStatus.PENDING or activity.activity_id == exclude:
                continue
            refs = {activity.moved_comment_id}
            if activity.anchor_comment_id is not None:
                refs.add(activity.anchor_comment_id)
            hit = bool(refs & comment_ids)
            if activity.target_cluster_id is not None and activity.target_cluster_id in cluster_ids:
                hit = True
            if hit:
                activity.status = ActivityStatus.SUPERSEDED
                activity.resolved_at = at

    def _pool_entry(self, topic: str, question: str, state: PoolState) -> PoolEntry | None:
        for entry in self.suggestion_pool:
            if entry.topic == topic and entry.question == question and entry.state == state:
                return entry
        return None

    def _create_thread(
        self,
        topic: str,
        question: str,
        origin: ThreadOrigin,
        proposer_id: str | None,
        at: str,
    ) -> Thread:
        thread = Thread(
            thread_id=self._next_id("t"),
            topic=topic,
            guiding_question=question,
            origin=origin,
            proposer_id=proposer_id,
            created_at=at,
            ordering_index=len(self.threads),
        )
        self.threads[thread.thread_id] = thread
        return thread

    # ------------------------------------------------------------------
    # state snapshot

    def snapshot(self) -> dict:
        """Complete engine state as JSON-safe data (canonical for replay checks)."""
        return {
            "format": "roundtable-state/1",
            "discussion_id": self.discussion_id,
            "article_ref": self.article_ref,
            "article_text": self.article_text,
            "created_at": self.created_at,
            "config": self.config.to_dict(),
            "seq": self.seq,
            "clusters_created": self.clusters_created,
            "summaries_created": self.summaries_created,
            "counters": dict(self._counters),
            "users": [u.to_dict() for u in self.users.values()],
            "threads": [t.to_dict() for t in self.ordered_threads()],
            "comments": [c.to_dict() for c in self.comments.values()],
            "clusters": [c.to_dict() for c in self.clusters.values()],
            "activities": [a.to_dict() for a in self.activities.values()],
            "summaries": [s.to_dict() for s in self.summaries.values()],
            "proposals": [p.to_dict() for p in self.proposals.values()],
            "suggestion_pool": [e.to_dict() for e in self.suggestion_pool],
        }
