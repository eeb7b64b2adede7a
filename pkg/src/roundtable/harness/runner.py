"""Scenario runner: drives a discussion in-process or over HTTP.

The in-process target wraps a fresh hub (memory store, logical clock)
and asserts the engine invariants after every applied action. The HTTP
target speaks to a running service through httpx (any httpx.Client
works, including FastAPI's TestClient); invariants are verified at the
end by replaying the exported event log.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone

import httpx

from ..engine.errors import DomainError, ERROR_CODES
from ..engine.invariants import InvariantViolation, check_invariants
from ..engine.models import EngineConfig, Level
from ..suggest.provider import stub_provider, suggest_summary
from ..service.hub import DiscussionHub
from ..service.store import EventStore, PersistedEvent, replay
from .report import UsageReport, usage_report_from_engine
from .scenario import Action, Scenario

IN_PROCESS = "inprocess"


class LogicalClock:
    """Deterministic timestamps: one second per tick from a fixed epoch."""

    def __init__(self, start: str = "2025-01-06T09:00:00+00:00"):
        self._base = datetime.fromisoformat(start)
        if self._base.tzinfo is None:
            self._base = self._base.replace(tzinfo=timezone.utc)
        self._ticks = 0

    def next(self) -> str:
        ts = self._base + timedelta(seconds=self._ticks)
        self._ticks += 1
        return ts.isoformat(timespec="microseconds")


class ScenarioFailure(Exception):
    def __init__(self, message: str, action_index: int | None = None, line_no: int | None = None):
        self.action_index = action_index
        self.line_no = line_no
        prefix = ""
        if action_index is not None:
            prefix = f"action {action_index}"
            if line_no is not None:
                prefix += f" (line {line_no})"
            prefix += ": "
        super().__init__(prefix + message)


@dataclass
class RunResult:
    name: str
    target_kind: str
    report: UsageReport
    ok: bool
    diff: dict[str, tuple[int, int]]
    log: list[str] = field(default_factory=list)
    driver: object = None  # the target that ran the scenario (engine/export access)

    @property
    def log_text(self) -> str:
        return "\n".join(self.log) + "\n"


# ---------------------------------------------------------------------------
# targets


class InProcessTarget:
    kind = IN_PROCESS

    def __init__(self, config: EngineConfig):
        self.hub = DiscussionHub(
            store=EventStore(":memory:"),
            provider=stub_provider(),
            config=config,
            clock=LogicalClock().next,
        )
        self.discussion_id = ""
        self.user_ids: dict[str, str] = {}

    @property
    def engine(self):
        return self.hub.engine(self.discussion_id)

    def create(self, article_ref: str, article_text: str, pairs: list[tuple[str, str]]) -> None:
        engine = self.hub.create_discussion(article_ref, article_text, topic_pairs=pairs)
        self.discussion_id = engine.discussion_id

    def register(self, username: str, level: str) -> None:
        result, _, _ = self.hub.execute(
            self.discussion_id, "system", "register_user", {"username": username, "level": level}
        )
        self.user_ids[username] = result.user_id  # type: ignore[union-attr]

    def _run(self, actor: str, op: str, payload: dict) -> object:
        result, _, _ = self.hub.execute(self.discussion_id, self.user_ids[actor], op, payload)
        return result

    def comment(self, actor: str, thread_id: str, body: str, parent_id: str | None) -> str:
        result = self._run(
            actor, "post_comment", {"thread_id": thread_id, "body": body, "parent_id": parent_id}
        )
        return result.comment_id  # type: ignore[union-attr]

    def edit(self, actor: str, comment_id: str, body: str) -> None:
        self._run(actor, "edit_comment", {"comment_id": comment_id, "body": body})

    def delete(self, actor: str, comment_id: str) -> None:
        self._run(actor, "delete_comment", {"comment_id": comment_id})

    def like(self, actor: str, comment_id: str) -> int:
        return self._run(actor, "toggle_like", {"comment_id": comment_id})  # type: ignore

    def propose(
        self, actor: str, thread_id: str, moved: str, anchor: str | None, cluster: str | None
    ) -> str:
        result = self._run(
            actor,
            "propose_cluster",
            {
                "thread_id": thread_id,
                "moved_comment_id": moved,
                "anchor_comment_id": anchor,
                "target_cluster_id": cluster,
            },
        )
        return result.activity_id  # type: ignore[union-attr]

    def review(self, actor: str, activity_id: str, verdict: str) -> tuple[str, str | None]:
        result = self._run(actor, "review_cluster", {"activity_id": activity_id, "verdict": verdict})
        return result.status, result.cluster_id  # type: ignore[union-attr]

    def summarize(self, actor: str, cluster_id: str, text: str) -> str:
        cluster = self.engine.clusters[cluster_id]
        bodies = [
            self.engine.comments[cid].body
            for cid in cluster.member_comment_ids
            if not self.engine.comments[cid].deleted
        ]
        draft = suggest_summary(self.hub.provider, bodies)
        result = self._run(
            actor,
            "summarize_cluster",
            {"cluster_id": cluster_id, "text": text, "ai_suggested_text": draft.text},
        )
        return result.summary_id  # type: ignore[union-attr]

    def propose_thread(self, actor: str, topic: str, question: str, source: str) -> str:
        result = self._run(
            actor,
            "propose_thread",
            {"topic": topic, "guiding_question": question, "source": source},
        )
        return result.proposal_id  # type: ignore[union-attr]

    def review_thread(self, actor: str, proposal_id: str, verdict: str) -> tuple[str, str | None]:
        result = self._run(actor, "review_thread", {"proposal_id": proposal_id, "verdict": verdict})
        return result.status, result.thread_id  # type: ignore[union-attr]

    def check(self, full: bool) -> None:
        check_invariants(self.engine, full=True, sampled_visibility=not full)

    def final_verify(self) -> None:
        check_invariants(self.engine, full=True)
        rebuilt = replay(self.hub.store.events(self.discussion_id))
        if rebuilt.snapshot() != self.engine.snapshot():
            raise InvariantViolation("event-log replay diverged from live state")

    def report(self) -> UsageReport:
        return usage_report_from_engine(self.engine)

    def export(self) -> dict:
        return self.hub.export_discussion(self.discussion_id)


class HttpTarget:
    kind = "http"

    def __init__(self, client: httpx.Client, config: EngineConfig):
        self.client = client
        self.config = config
        self.discussion_id = ""
        self.tokens: dict[str, str] = {}

    def _check(self, response: httpx.Response) -> dict:
        if response.status_code >= 400:
            try:
                error = response.json()["error"]
                code, message = error["code"], error["message"]
            except (KeyError, ValueError):
                raise DomainError(f"http {response.status_code}: {response.text[:200]}") from None
            raise ERROR_CODES.get(code, DomainError)(message)
        return response.json()

    def _post(self, path: str, body: dict, actor: str | None = None) -> dict:
        headers = {}
        if actor is not None:
            headers["Authorization"] = f"Bearer {self.tokens[actor]}"
        return self._check(self.client.post(path, json=body, headers=headers))

    def create(self, article_ref: str, article_text: str, pairs: list[tuple[str, str]]) -> None:
        self._article_ref = article_ref
        body = self._post(
            "/api/discussions",
            {
                "article_ref": article_ref,
                "article_text": article_text,
                "topic_pairs": [list(p) for p in pairs],
            },
        )
        self.discussion_id = body["discussion_id"]

    def register(self, username: str, level: str) -> None:
        body = self._post(
            "/api/sessions",
            {"username": username, "level": level, "article_ref": self._article_ref},
        )
        self.tokens[username] = body["token"]

    def comment(self, actor: str, thread_id: str, body: str, parent_id: str | None) -> str:
        out = self._post(
            f"/api/threads/{thread_id}/comments", {"body": body, "parent_id": parent_id}, actor
        )
        return out["comment"]["comment_id"]

    def edit(self, actor: str, comment_id: str, body: str) -> None:
        headers = {"Authorization": f"Bearer {self.tokens[actor]}"}
        self._check(self.client.patch(f"/api/comments/{comment_id}", json={"body": body}, headers=headers))

    def delete(self, actor: str, comment_id: str) -> None:
        headers = {"Authorization": f"Bearer {self.tokens[actor]}"}
        self._check(self.client.delete(f"/api/comments/{comment_id}", headers=headers))

    def like(self, actor: str, comment_id: str) -> int:
        return self._post(f"/api/comments/{comment_id}/like", {}, actor)["like_count"]

    def propose(
        self, actor: str, thread_id: str, moved: str, anchor: str | None, cluster: str | None
    ) -> str:
        out = self._post(
            f"/api/threads/{thread_id}/cluster-activities",
            {
                "moved_comment_id": moved,
                "anchor_comment_id": anchor,
                "target_cluster_id": cluster,
            },
            actor,
        )
        return out["activity"]["activity_id"]

    def review(self, actor: str, activity_id: str, verdict: str) -> tuple[str, str | None]:
        out = self._post(f"/api/cluster-activities/{activity_id}/votes", {"verdict": verdict}, actor)
        return out["outcome"]["status"], out["outcome"].get("cluster_id")

    def summarize(self, actor: str, cluster_id: str, text: str) -> str:
        headers = {"Authorization": f"Bearer {self.tokens[actor]}"}
        draft = self._check(
            self.client.get(f"/api/clusters/{cluster_id}/summary-draft", headers=headers)
        )["draft"]
        out = self._post(
            f"/api/clusters/{cluster_id}/summary",
            {"text": text, "ai_suggested_text": draft["text"]},
            actor,
        )
        return out["summary"]["summary_id"]

    def propose_thread(self, actor: str, topic: str, question: str, source: str) -> str:
        out = self._post(
            f"/api/discussions/{self.discussion_id}/thread-proposals",
            {"topic": topic, "guiding_question": question, "source": source},
            actor,
        )
        return out["proposal"]["proposal_id"]

    def review_thread(self, actor: str, proposal_id: str, verdict: str) -> tuple[str, str | None]:
        out = self._post(f"/api/thread-proposals/{proposal_id}/votes", {"verdict": verdict}, actor)
        return out["outcome"]["status"], out["outcome"].get("thread_id")

    def check(self, full: bool) -> None:
        pass  # per-action checks run in-process; HTTP verifies via final export

    def final_verify(self) -> None:
        archive = self.export()
        engine = replay([PersistedEvent.from_dict(e) for e in archive["events"]])
        if engine.snapshot() != archive["state"]:
            raise InvariantViolation("exported state does not match its event log")
        check_invariants(engine, full=True)

    def report(self) -> UsageReport:
        body = self._check(self.client.get(f"/api/discussions/{self.discussion_id}/report"))
        return UsageReport.from_dict(body["usage"])

    def export(self) -> dict:
        return self._check(self.client.get(f"/api/discussions/{self.discussion_id}/export"))


# ---------------------------------------------------------------------------
# the runner


def run_scenario(
    scenario: Scenario,
    target: str | httpx.Client = IN_PROCESS,
    full_check_every: int = 25,
    concurrency: int = 1,
) -> RunResult:
    """Apply a scenario's actions in order and compute the usage report.

    ``target`` is ``"inprocess"``, an httpx.Client bound to a running
    service, or a base URL string. Engine invariants are asserted after
    every action (in-process), with the exhaustive visibility check every
    ``full_check_every`` actions and at the end.

    ``concurrency`` > 1 issues batches of pairwise-independent actions in
    parallel (meant for HTTP targets, to exercise the linearizable command
    interface); the usage report is unaffected by intra-batch ordering
    because batched actions never share an entity.
    """
    if isinstance(target, str) and target != IN_PROCESS:
        target = httpx.Client(base_url=target, timeout=30.0)
    if target == IN_PROCESS:
        driver: InProcessTarget | HttpTarget = InProcessTarget(scenario.config)
    else:
        driver = HttpTarget(target, scenario.config)

    log: list[str] = []
    refs: dict[str, str] = {}
    comment_thread: dict[str, str] = {}

    def resolve(ref: str) -> str:
        return refs.get(ref, ref)

    def bind(action: Action, value: str | None) -> None:
        if action.alias is None:
            return
        if value is None:
            raise ScenarioFailure(
                f"alias {action.alias!r} on an action that produced no id",
                action.index,
                action.line_no,
            )
        refs[action.alias] = value

    driver.create(scenario.article_ref, scenario.article_text, scenario.topic_pairs)
    for username, level in scenario.roster:
        driver.register(username, level)
    log.append(
        f"[init] {scenario.article_ref} threads={scenario.config.initial_topic_count} "
        f"roster={len(scenario.roster)}"
    )

    action_log: list[str] = []

    def run_one(action: Action) -> None:
        try:
            note = _apply(driver, action, resolve, bind, comment_thread)
        except DomainError as exc:
            raise ScenarioFailure(
                f"{exc.code}: {exc.message}", action.index, action.line_no
            ) from exc
        action_log.append(f"[{action.index:04d}] {action.actor} {action.op} -> {note}")

    if concurrency <= 1:
        for action in scenario.actions:
            run_one(action)
            try:
                driver.check(full=(action.index + 1) % full_check_every == 0)
            except InvariantViolation as exc:
                raise ScenarioFailure(str(exc), action.index, action.line_no) from exc
    else:
        for batch in _independent_batches(scenario.actions, resolve, comment_thread, concurrency):
            if len(batch) == 1:
                run_one(batch[0])
            else:
                with ThreadPoolExecutor(max_workers=len(batch)) as pool:
                    list(pool.map(run_one, batch))
            driver.check(full=False)
        action_log.sort()  # completion order varies; index prefixes restore it
    log.extend(action_log)

    driver.final_verify()
    report = driver.report()
    diff: dict[str, tuple[int, int]] = {}
    ok = True
    if scenario.expected is not None:
        diff = scenario.expected.diff(report)
        ok = not diff
    log.append(f"[done] ok={ok} report={report.to_dict()}")
    return RunResult(
        name=scenario.name,
        target_kind=driver.kind,
        report=report,
        ok=ok,
        diff=diff,
        log=log,
        driver=driver,
    )


def _action_refs(action: Action, resolve, comment_thread: dict[str, str]) -> set[str]:
    """Entities an action touches, for independence batching. Thread-level
    structural operations collapse onto one token so they never parallelize."""
    a = action.args
    if action.op == "comment":
        return {resolve(a["thread"])}
    if action.op == "reply":
        parent = resolve(a["parent"])
        return {parent, comment_thread.get(parent, parent)}
    if action.op in ("edit", "delete", "like"):
        return {resolve(a["target"])}
    if action.op == "propose":
        moved = resolve(a["move"])
        target = resolve(a.get("onto") or a["into"])
        return {moved, target, comment_thread.get(moved, moved)}
    if action.op == "review":
        return {resolve(a["target"])}
    if action.op == "summarize":
        return {resolve(a["cluster"])}
    return {"__structure__"}


def _independent_batches(actions, resolve, comment_thread, limit):
    """Greedy in-order batching of pairwise-independent actions: disjoint
    entity references, distinct actors, and no use of an alias defined
    earlier in the same batch."""
    batch: list[Action] = []
    used: set[str] = set()
    actors: set[str] = set()
    defined: set[str] = set()
    for action in actions:
        refs = _action_refs(action, resolve, comment_thread)
        conflict = (
            len(batch) >= limit
            or action.actor in actors
            or bool(refs & used)
            or bool(refs & defined)
        )
        if conflict and batch:
            yield batch
            batch, used, actors, defined = [], set(), set(), set()
            refs = _action_refs(action, resolve, comment_thread)
        batch.append(action)
        used |= refs
        actors.add(action.actor)
        if action.alias is not None:
            defined.add(action.alias)
    if batch:
        yield batch


def _apply(driver, action: Action, resolve, bind, comment_thread: dict[str, str]) -> str:
    a = action.args
    actor = action.actor
    if action.op == "comment":
        thread_id = resolve(a["thread"])
        cid = driver.comment(actor, thread_id, a["body"], None)
        comment_thread[cid] = thread_id
        bind(action, cid)
        return cid
    if action.op == "reply":
        parent = resolve(a["parent"])
        cid = driver.comment(actor, comment_thread[parent], a["body"], parent)
        comment_thread[cid] = comment_thread[parent]
        bind(action, cid)
        return cid
    if action.op == "edit":
        driver.edit(actor, resolve(a["target"]), a["body"])
        return "edited"
    if action.op == "delete":
        driver.delete(actor, resolve(a["target"]))
        return "deleted"
    if action.op == "like":
        count = driver.like(actor, resolve(a["target"]))
        return f"likes={count}"
    if action.op == "propose":
        moved = resolve(a["move"])
        anchor = resolve(a["onto"]) if "onto" in a else None
        cluster = resolve(a["into"]) if "into" in a else None
        aid = driver.propose(actor, comment_thread[moved], moved, anchor, cluster)
        bind(action, aid)
        return aid
    if action.op == "review":
        status, cluster_id = driver.review(actor, resolve(a["target"]), a["verdict"])
        if action.alias is not None:
            bind(action, cluster_id)
        return f"{status}" + (f" {cluster_id}" if cluster_id else "")
    if action.op == "summarize":
        sid = driver.summarize(actor, resolve(a["cluster"]), a["text"])
        bind(action, sid)
        return sid
    if action.op == "propose_thread":
        source = "ai_suggested" if a["source"] == "ai" else "user_authored"
        pid = driver.propose_thread(actor, a["topic"], a["question"], source)
        bind(action, pid)
        return pid
    if action.op == "review_thread":
        status, thread_id = driver.review_thread(actor, resolve(a["target"]), a["verdict"])
        if action.alias is not None:
            bind(action, thread_id)
        return f"{status}" + (f" {thread_id}" if thread_id else "")
    raise ScenarioFailure(f"unhandled op {action.op}", action.index, action.line_no)
