"""HTTP surface: one endpoint per engine operation.

Every mutation response carries the operation result, the event sequence
number, and the caller's refreshed projection. Engine error codes map
one-to-one onto HTTP statuses with the code preserved in the body, so
clients can match on stable names. Mutating endpoints honor an
``Idempotency-Key`` header: retries return the recorded response without
re-applying.
"""

from __future__ import annotations

import os

from fastapi import Depends, FastAPI, Header, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..engine.errors import (
    DomainError,
    ForbiddenError,
    NotFoundError,
    ValidationError,
)
from ..engine.models import EngineConfig, Level
from ..engine.views import project_view
from ..suggest.parser import LENIENT
from ..suggest.provider import (
    Provider,
    external_provider_from_env,
    stub_provider,
    suggest_summary,
)
from .hub import DiscussionHub
from .schemas import (
    ClusterProposalRequest,
    CommentCreateRequest,
    CommentEditRequest,
    CreateDiscussionRequest,
    ImportArchiveRequest,
    RegisterSessionRequest,
    SummaryCreateRequest,
    ThreadProposalRequest,
    VoteRequest,
)
from .store import EventStore

HTTP_STATUS_BY_CODE = {
    "validation-error": 422,
    "depth-violation": 422,
    "not-top-level": 422,
    "invalid-target": 422,
    "forbidden": 403,
    "unauthorized": 401,
    "not-found": 404,
    "gone": 410,
    "conflict": 409,
    "already-exists": 409,
    "already-voted": 409,
    "stale-activity": 409,
    "cluster-frozen": 409,
    "provider-error": 502,
    "parse-error": 502,
    "constraint-error": 502,
}

ENV_DB = "ROUNDTABLE_DB"
ENV_PROVIDER_KIND = "ROUNDTABLE_PROVIDER_KIND"
ENV_THRESHOLDS = {
    "cluster_approval_threshold": "ROUNDTABLE_CLUSTER_APPROVAL_THRESHOLD",
    "cluster_denial_threshold": "ROUNDTABLE_CLUSTER_DENIAL_THRESHOLD",
    "thread_approval_threshold": "ROUNDTABLE_THREAD_APPROVAL_THRESHOLD",
    "thread_denial_threshold": "ROUNDTABLE_THREAD_DENIAL_THRESHOLD",
    "initial_topic_count": "ROUNDTABLE_INITIAL_TOPIC_COUNT",
}


def config_from_env() -> EngineConfig:
    values = {}
    for field, env in ENV_THRESHOLDS.items():
        raw = os.environ.get(env)
        if raw is not None:
            values[field] = int(raw)
    return EngineConfig(**values)


def provider_from_env() -> Provider:
    kind = os.environ.get(ENV_PROVIDER_KIND, "stub")
    if kind == "external":
        return external_provider_from_env()
    return stub_provider(strictness=LENIENT)


def hub_from_env() -> DiscussionHub:
    return DiscussionHub(
        store=EventStore(os.environ.get(ENV_DB, "roundtable.db")),
        provider=provider_from_env(),
        config=config_from_env(),
    )


class Session:
    def __init__(self, hub: DiscussionHub, engine, discussion_id: str, user_id: str):
        self.hub = hub
        self.engine = engine
        self.discussion_id = discussion_id
        self.user_id = user_id

    @property
    def user(self):
        return self.engine.users[self.user_id]


def create_app(hub: DiscussionHub | None = None) -> FastAPI:
    app = FastAPI(title="roundtable", version="0.1.0")
    app.state.hub = hub or hub_from_env()
    # The web client is served from its own origin (study-grade deployment).
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def get_hub() -> DiscussionHub:
        return app.state.hub

    def get_session(authorization: str = Header(default="")) -> Session:
        if not authorization.startswith("Bearer "):
            raise DomainErrorWithCode("unauthorized", "missing bearer token")
        token = authorization.removeprefix("Bearer ").strip()
        try:
            engine, discussion_id, user_id = app.state.hub.resolve_session(token)
        except NotFoundError:
            raise DomainErrorWithCode("unauthorized", "unknown session token") from None
        return Session(app.state.hub, engine, discussion_id, user_id)

    @app.exception_handler(DomainError)
    async def domain_error_handler(_request: Request, exc: DomainError):
        status = HTTP_STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(
            status_code=status, content={"error": {"code": exc.code, "message": exc.message}}
        )

    @app.exception_handler(RequestValidationError)
    async def request_validation_handler(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"error": {"code": "validation-error", "message": str(exc.errors())}},
        )

    def mutate(
        session: Session,
        operation: str,
        payload: dict,
        idempotency_key: str | None,
        result_key: str,
        result_to_dict=lambda r: r.to_dict(),
    ) -> dict:
        def respond(result, seq, engine) -> dict:
            return {
                result_key: result_to_dict(result),
                "seq": seq,
                "view": project_view(engine, session.user_id),
            }

        body, _seq, _replayed = session.hub.execute(
            session.discussion_id,
            session.user_id,
            operation,
            payload,
            idempotency_key=idempotency_key,
            respond=respond,
        )
        return body  # type: ignore[return-value]

    # -- discussions ---------------------------------------------------

    @app.post("/api/discussions", status_code=201)
    def create_discussion(body: CreateDiscussionRequest, hub: DiscussionHub = Depends(get_hub)):
        engine = hub.create_discussion(
            body.article_ref,
            body.article_text,
            topic_pairs=[tuple(p) for p in body.topic_pairs] if body.topic_pairs else None,
        )
        return {
            "discussion_id": engine.discussion_id,
            "article_ref": engine.article_ref,
            "threads": [
                {
                    "thread_id": t.thread_id,
                    "topic": t.topic,
                    "guiding_question": t.guiding_question,
                }
                for t in engine.ordered_threads()
            ],
            "seq": hub.store.last_seq(engine.discussion_id),
        }

    @app.get("/api/discussions")
    def list_discussions(hub: DiscussionHub = Depends(get_hub)):
        out = []
        for discussion_id in hub.discussion_ids():
            engine = hub.engine(discussion_id)
            out.append(
                {
                    "discussion_id": discussion_id,
                    "article_ref": engine.article_ref,
                    "created_at": engine.created_at,
                }
            )
        return out

    @app.get("/api/discussions/{discussion_id}")
    def get_discussion(discussion_id: str, hub: DiscussionHub = Depends(get_hub)):
        engine = hub.engine(discussion_id)
        return {
            "discussion_id": engine.discussion_id,
            "article_ref": engine.article_ref,
            "article_text": engine.article_text,
            "created_at": engine.created_at,
            "threads": [
                {
                    "thread_id": t.thread_id,
                    "topic": t.topic,
                    "guiding_question": t.guiding_question,
                    "origin": t.origin.value,
                }
                for t in engine.ordered_threads()
            ],
        }

    # -- sessions ------------------------------------------------------

    @app.post("/api/sessions", status_code=201)
    def register_session(body: RegisterSessionRequest, hub: DiscussionHub = Depends(get_hub)):
        token, user = hub.register_session(body.username, body.level, body.article_ref)
        return {
            "token": token,
            "user": user,
            "discussion_id": hub.engine_by_article(body.article_ref).discussion_id,
        }

    @app.get("/api/me")
    def whoami(session: Session = Depends(get_session)):
        return {"user": session.user.to_dict(), "discussion_id": session.discussion_id}

    @app.get("/api/discussions/{discussion_id}/view")
    def discussion_view(discussion_id: str, session: Session = Depends(get_session)):
        _require_same_discussion(session, discussion_id)
        return {
            "seq": session.hub.store.last_seq(discussion_id),
            "view": project_view(session.engine, session.user_id),
        }

    # -- comments ------------------------------------------------------

    @app.post("/api/threads/{thread_id}/comments", status_code=201)
    def post_comment(
        thread_id: str,
        body: CommentCreateRequest,
        session: Session = Depends(get_session),
        idempotency_key: str | None = Header(default=None, alias="Idempotency-Key"),
    ):
        return mutate(
            session,
            "post_comment",
            {"thread_id": thread_id, "body": body.body, "parent_id": body.parent_id},
            idempotency_key,
            "comment",
        )

    @app.patch("/api/comments/{comment_id}")
    def edit_comment(
        comment_id: str,
        body: CommentEditRequest,
        session: Session = Depends(get_session),
        idempotency_key: str | None = Header(default=None, alias="Idempotency-Key"),
    ):
        return mutate(
            session,
            "edit_comment",
            {"comment_id": comment_id, "body": body.body},
            idempotency_key,
            "comment",
        )

    @app.delete("/api/comments/{comment_id}")
    def delete_comment(
        comment_id: str,
        session: Session = Depends(get_session),
        idempotency_key: str | None = Header(default=None, alias="Idempotency-Key"),
    ):
        return mutate(
            session, "delete_comment", {"comment_id": comment_id}, idempotency_key, "comment"
        )

    @app.post("/api/comments/{comment_id}/like")
    def toggle_like(
        comment_id: str,
        session: Session = Depends(get_session),
        idempotency_key: str | None = Header(default=None, alias="Idempotency-Key"),
    ):
        return mutate(
            session,
            "toggle_like",
            {"comment_id": comment_id},
            idempotency_key,
            "like_count",
            result_to_dict=lambda count: count,
        )

    # -- clustering ----------------------------------------------------

    @app.post("/api/threads/{thread_id}/cluster-activities", status_code=201)
    def propose_cluster(
        thread_id: str,
        body: ClusterProposalRequest,
        session: Session = Depends(get_session),
        idempotency_key: str | None = Header(default=None, alias="Idempotency-Key"),
    ):
        return mutate(
            session,
            "propose_cluster",
            {
                "thread_id": thread_id,
                "moved_comment_id": body.moved_comment_id,
                "anchor_comment_id": body.anchor_comment_id,
                "target_cluster_id": body.target_cluster_id,
            },
            idempotency_key,
            "activity",
        )

    @app.get("/api/discussions/{discussion_id}/cluster-reviews")
    def cluster_review_queue(discussion_id: str, session: Session = Depends(get_session)):
        _require_same_discussion(session, discussion_id)
        if session.user.level != Level.LV1:
            raise ForbiddenError("only LV1 users see the cluster review queue")
        view = project_view(session.engine, session.user_id)
        return {"queue": view.get("cluster_review_queue", [])}

    @app.post("/api/cluster-activities/{activity_id}/votes")
    def review_cluster(
        activity_id: str,
        body: VoteRequest,
        session: Session = Depends(get_session),
        idempotency_key: str | None = Header(default=None, alias="Idempotency-Key"),
    ):
        return mutate(
            session,
            "review_cluster",
            {"activity_id": activity_id, "verdict": body.verdict},
            idempotency_key,
            "outcome",
        )

    # -- summaries -----------------------------------------------------

    @app.get("/api/clusters/{cluster_id}/summary-draft")
    def summary_draft(cluster_id: str, session: Session = Depends(get_session)):
        if session.user.level != Level.LV1:
            raise ForbiddenError("only LV1 users summarize clusters")
        cluster = session.engine.clusters.get(cluster_id)
        if cluster is None or not cluster.visible:
            raise NotFoundError(f"unknown cluster: {cluster_id}")
        bodies = [
            session.engine.comments[cid].body
            for cid in cluster.member_comment_ids
            if not session.engine.comments[cid].deleted
        ]
        draft = suggest_summary(session.hub.provider, bodies)
        return {"draft": draft.to_dict()}

    @app.post("/api/clusters/{cluster_id}/summary", status_code=201)
    def summarize_cluster(
        cluster_id: str,
        body: SummaryCreateRequest,
        session: Session = Depends(get_session),
        idempotency_key: str | None = Header(default=None, alias="Idempotency-Key"),
    ):
        ai_text = body.ai_suggested_text
        if ai_text is None:
            cluster = session.engine.clusters.get(cluster_id)
            if cluster is not None and cluster.visible:
                bodies = [
                    session.engine.comments[cid].body
                    for cid in cluster.member_comment_ids
                    if not session.engine.comments[cid].deleted
                ]
                ai_text = suggest_summary(session.hub.provider, bodies).text
            else:
                ai_text = ""
        return mutate(
            session,
            "summarize_cluster",
            {"cluster_id": cluster_id, "text": body.text, "ai_suggested_text": ai_text},
            idempotency_key,
            "summary",
        )

    # -- threading -----------------------------------------------------

    @app.post("/api/discussions/{discussion_id}/thread-proposals", status_code=201)
    def propose_thread(
        discussion_id: str,
        body: ThreadProposalRequest,
        session: Session = Depends(get_session),
        idempotency_key: str | None = Header(default=None, alias="Idempotency-Key"),
    ):
        _require_same_discussion(session, discussion_id)
        return mutate(
            session,
            "propose_thread",
            {
                "topic": body.topic,
                "guiding_question": body.guiding_question,
                "source": body.source,
            },
            idempotency_key,
            "proposal",
        )

    @app.get("/api/discussions/{discussion_id}/thread-reviews")
    def thread_review_queue(discussion_id: str, session: Session = Depends(get_session)):
        _require_same_discussion(session, discussion_id)
        if session.user.level != Level.LV2:
            raise ForbiddenError("only LV2 users see the thread review queue")
        view = project_view(session.engine, session.user_id)
        return {"queue": view.get("thread_review_queue", [])}

    @app.get("/api/discussions/{discussion_id}/suggestion-pool")
    def suggestion_pool(discussion_id: str, session: Session = Depends(get_session)):
        _require_same_discussion(session, discussion_id)
        if session.user.level != Level.LV2:
            raise ForbiddenError("only LV2 users see the suggestion pool")
        view = project_view(session.engine, session.user_id)
        return {"pool": view.get("suggestion_pool", [])}

    @app.post("/api/thread-proposals/{proposal_id}/votes")
    def review_thread(
        proposal_id: str,
        body: VoteRequest,
        session: Session = Depends(get_session),
        idempotency_key: str | None = Header(default=None, alias="Idempotency-Key"),
    ):
        return mutate(
            session,
            "review_thread",
            {"proposal_id": proposal_id, "verdict": body.verdict},
            idempotency_key,
            "outcome",
        )

    # -- export / report ------------------------------------------------

    @app.get("/api/discussions/{discussion_id}/export")
    def export_discussion(discussion_id: str, hub: DiscussionHub = Depends(get_hub)):
        return hub.export_discussion(discussion_id)

    @app.post("/api/discussions/import", status_code=201)
    def import_discussion(body: ImportArchiveRequest, hub: DiscussionHub = Depends(get_hub)):
        engine = hub.import_archive(body.archive)
        return {"discussion_id": engine.discussion_id}

    @app.get("/api/discussions/{discussion_id}/report")
    def usage_report(discussion_id: str, hub: DiscussionHub = Depends(get_hub)):
        from ..harness.report import usage_report_from_engine

        engine = hub.engine(discussion_id)
        return {"usage": usage_report_from_engine(engine).to_dict()}

    return app


class DomainErrorWithCode(DomainError):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


def _require_same_discussion(session: Session, discussion_id: str) -> None:
    if session.discussion_id != discussion_id:
        raise ForbiddenError("session is bound to a different discussion")
