"""Protocol fuzzer: random but capability-respecting action streams.

Each seed yields one deterministic stream. Engine invariants (most
importantly frozen-cluster immutability and threshold soundness) are
asserted after every step; a violation writes a reproducer file with the
seed and the action log prefix.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from ..engine.errors import DomainError, ValidationError
from ..engine.invariants import InvariantViolation, check_invariants
from ..engine.models import ActivityStatus, EngineConfig, Level, PoolState, ProposalStatus
from ..suggest.provider import stub_provider
from ..service.hub import DiscussionHub
from ..service.store import EventStore
from .report import UsageReport, usage_report_from_engine
from .runner import LogicalClock

_VOCAB = (
    "policy debate evidence impact citizens budget reform question answer "
    "viewpoint concern benefit tradeoff proposal context detail source story "
    "headline opinion community process change effect reason outcome"
).split()

_TOPIC_WORDS = ("Civic", "Policy", "Impact", "Debate", "Reform", "Outlook", "Review", "Angle")


class FuzzFailure(Exception):
    def __init__(self, message: str, step: int, seed: int, reproducer: str | None):
        self.step = step
        self.seed = seed
        self.reproducer = reproducer
        suffix = f" (reproducer: {reproducer})" if reproducer else ""
        super().__init__(f"step {step} (seed {seed}): {message}{suffix}")


@dataclass
class FuzzResult:
    seed: int
    steps: int
    applied: dict[str, int]
    rejected: dict[str, int]  # expected engine errors by code
    report: UsageReport
    log: list[str] = field(default_factory=list)

    @property
    def log_text(self) -> str:
        return "\n".join(self.log) + "\n"


def _parse_roster(spec: str) -> list[tuple[str, str]]:
    try:
        n0, n1, n2 = (int(part) for part in spec.split(":"))
    except ValueError:
        raise ValidationError(f"roster spec must be 'N:N:N', got {spec!r}") from None
    roster = []
    for level, count in (("LV0", n0), ("LV1", n1), ("LV2", n2)):
        for i in range(count):
            roster.append((f"{level.lower()}_{i + 1}", level))
    return roster


def fuzz_protocol(
    seed: int,
    steps: int,
    roster: str = "3:4:4",
    full_check_every: int = 50,
    reproducer_dir: str | Path | None = ".",
) -> FuzzResult:
    if steps < 1:
        raise ValidationError("steps must be >= 1")
    rng = random.Random(seed)
    members = _parse_roster(roster)

    hub = DiscussionHub(
        store=EventStore(":memory:"),
        provider=stub_provider(),
        config=EngineConfig(),
        clock=LogicalClock().next,
    )
    pairs = [
        (f"Fuzz Topic Number {n} Here", f"What about fuzz topic {n}?") for n in range(1, 7)
    ]
    engine = hub.create_discussion(f"fuzz:seed-{seed}", "fuzz article text body", pairs)
    discussion_id = engine.discussion_id
    user_ids: dict[str, str] = {}
    for username, level in members:
        result, _, _ = hub.execute(
            discussion_id, "system", "register_user", {"username": username, "level": level}
        )
        user_ids[username] = result.user_id  # type: ignore[union-attr]
    by_level = {
        level: [user_ids[name] for name, lv in members if lv == level]
        for level in ("LV0", "LV1", "LV2")
    }

    applied: dict[str, int] = {}
    rejected: dict[str, int] = {}
    log: list[str] = []

    def words(n: int) -> str:
        return " ".join(rng.choice(_VOCAB) for _ in range(n))

    def pick_comment(top_level: bool = True, alive: bool = True):
        candidates = [
            c
            for c in engine.comments.values()
            if (c.parent_id is None) == top_level and (not alive or not c.deleted)
        ]
        return rng.choice(candidates) if candidates else None

    def step_action(i: int) -> tuple[str, str]:
        """Pick and apply one action; returns (description, outcome)."""
        op = rng.choices(
            (
                "post_comment",
                "reply",
                "like",
                "edit",
                "delete",
                "propose_cluster",
                "review_cluster",
                "summarize",
                "propose_thread",
                "review_thread",
            ),
            weights=(24, 10, 10, 4, 2, 16, 22, 5, 3, 4),
        )[0]

        def run(actor_id: str, operation: str, payload: dict) -> object:
            result, _, _ = hub.execute(discussion_id, actor_id, operation, payload)
            return result

        if op == "reply":
            parent = pick_comment(top_level=True)
            if parent is None:
                op = "post_comment"
            else:
                actor = rng.choice(list(user_ids.values()))
                run(actor, "post_comment", {
                    "thread_id": parent.thread_id,
                    "body": words(rng.randint(3, 12)),
                    "parent_id": parent.comment_id,
                })
                return f"reply under {parent.comment_id}", "ok"
        if op == "post_comment":
            actor = rng.choice(list(user_ids.values()))
            thread = rng.choice(list(engine.threads.values()))
            run(actor, "post_comment", {
                "thread_id": thread.thread_id,
                "body": words(rng.randint(3, 16)),
                "parent_id": None,
            })
            return f"comment in {thread.thread_id}", "ok"
        if op == "like":
            comment = pick_comment(top_level=rng.random() < 0.7, alive=rng.random() < 0.9)
            if comment is None:
                return "like skipped", "noop"
            actor = rng.choice(list(user_ids.values()))
            run(actor, "toggle_like", {"comment_id": comment.comment_id})
            return f"like {comment.comment_id}", "ok"
        if op == "edit":
            comment = pick_comment(top_level=rng.random() < 0.5)
            if comment is None:
                return "edit skipped", "noop"
            actor = comment.author_id if rng.random() < 0.85 else rng.choice(list(user_ids.values()))
            run(actor, "edit_comment", {
                "comment_id": comment.comment_id,
                "body": words(rng.randint(3, 10)),
            })
            return f"edit {comment.comment_id}", "ok"
        if op == "delete":
            comment = pick_comment(top_level=rng.random() < 0.5)
            if comment is None:
                return "delete skipped", "noop"
            run(comment.author_id, "delete_comment", {"comment_id": comment.comment_id})
            return f"delete {comment.comment_id}", "ok"
        if op == "propose_cluster":
            moved = pick_comment(top_level=True)
            if moved is None:
                return "propose skipped", "noop"
            actor = rng.choice(by_level["LV0"])
            open_clusters = [
                k for k in engine.clusters.values()
                if k.visible and not k.summarized and k.thread_id == moved.thread_id
            ]
            if open_clusters and rng.random() < 0.35:
                target = rng.choice(open_clusters)
                run(actor, "propose_cluster", {
                    "thread_id": moved.thread_id,
                    "moved_comment_id": moved.comment_id,
                    "anchor_comment_id": None,
                    "target_cluster_id": target.cluster_id,
                })
                return f"propose {moved.comment_id} into {target.cluster_id}", "ok"
            anchors = [
                c for c in engine.comments.values()
                if c.parent_id is None
                and c.thread_id == moved.thread_id
                and c.comment_id != moved.comment_id
            ]
            if not anchors:
                return "propose skipped", "noop"
            anchor = rng.choice(anchors)
            run(actor, "propose_cluster", {
                "thread_id": moved.thread_id,
                "moved_comment_id": moved.comment_id,
                "anchor_comment_id": anchor.comment_id,
                "target_cluster_id": None,
            })
            return f"propose {moved.comment_id} onto {anchor.comment_id}", "ok"
        if op == "review_cluster":
            pending = [
                a for a in engine.activities.values() if a.status == ActivityStatus.PENDING
            ]
            if not pending:
                return "review skipped", "noop"
            activity = rng.choice(pending)
            actor = rng.choice(by_level["LV1"])
            verdict = "approve" if rng.random() < 0.65 else "decline"
            result = run(actor, "review_cluster", {
                "activity_id": activity.activity_id,
                "verdict": verdict,
            })
            return f"review {activity.activity_id} {verdict}", result.status  # type: ignore
        if op == "summarize":
            open_clusters = [
                k for k in engine.clusters.values() if k.visible and not k.summarized
            ]
            if not open_clusters:
                return "summarize skipped", "noop"
            cluster = rng.choice(open_clusters)
            actor = rng.choice(by_level["LV1"])
            run(actor, "summarize_cluster", {
                "cluster_id": cluster.cluster_id,
                "text": words(rng.randint(5, 15)),
                "ai_suggested_text": words(5),
            })
            return f"summarize {cluster.cluster_id}", "ok"
        if op == "propose_thread":
            actor = rng.choice(by_level["LV2"])
            available = [e for e in engine.suggestion_pool if e.state == PoolState.AVAILABLE]
            if available and rng.random() < 0.5:
                entry = rng.choice(available)
                run(actor, "propose_thread", {
                    "topic": entry.topic,
                    "guiding_question": entry.question,
                    "source": "ai_suggested",
                })
                return f"propose_thread ai {entry.topic!r}", "ok"
            n = len(engine.proposals) + 1
            run(actor, "propose_thread", {
                "topic": f"{rng.choice(_TOPIC_WORDS)} {rng.choice(_TOPIC_WORDS)} Angle {n}",
                "guiding_question": f"What about angle {n}?",
                "source": "user_authored",
            })
            return f"propose_thread user {n}", "ok"
        if op == "review_thread":
            pending = [
                p for p in engine.proposals.values() if p.status == ProposalStatus.PENDING
            ]
            if not pending:
                return "review_thread skipped", "noop"
            proposal = rng.choice(pending)
            actor = rng.choice(by_level["LV2"])
            verdict = "approve" if rng.random() < 0.7 else "decline"
            result = run(actor, "review_thread", {
                "proposal_id": proposal.proposal_id,
                "verdict": verdict,
            })
            return f"review_thread {proposal.proposal_id} {verdict}", result.status  # type: ignore
        return "noop", "noop"

    failure: InvariantViolation | None = None
    failed_step = -1
    for i in range(steps):
        try:
            description, outcome = step_action(i)
            applied[outcome] = applied.get(outcome, 0) + 1
            log.append(f"[{i:05d}] {description} -> {outcome}")
        except DomainError as exc:
            rejected[exc.code] = rejected.get(exc.code, 0) + 1
            log.append(f"[{i:05d}] rejected -> {exc.code}")
        engine = hub.engine(discussion_id)
        try:
            check_invariants(
                engine,
                full=(i + 1) % full_check_every == 0,
                sampled_visibility=True,
            )
        except InvariantViolation as exc:
            failure = exc
            failed_step = i
            break

    if failure is None:
        try:
            check_invariants(engine, full=True)
        except InvariantViolation as exc:
            failure = exc
            failed_step = steps - 1

    if failure is not None:
        reproducer = None
        if reproducer_dir is not None:
            path = Path(reproducer_dir) / f"fuzz-repro-seed{seed}-step{failed_step}.json"
            path.write_text(
                json.dumps(
                    {
                        "seed": seed,
                        "roster": roster,
                        "failed_step": failed_step,
                        "violation": str(failure),
                        "log": log,
                    },
                    indent=2,
                ),
                encoding="utf-8",
            )
            reproducer = str(path)
        raise FuzzFailure(str(failure), failed_step, seed, reproducer)

    return FuzzResult(
        seed=seed,
        steps=steps,
        applied=applied,
        rejected=rejected,
        report=usage_report_from_engine(engine),
        log=log,
    )
