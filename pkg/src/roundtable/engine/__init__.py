from .engine import DiscussionEngine, canonical_article_ref, discussion_id_for
from .errors import DomainError, ERROR_CODES
from .models import (
    ActivityStatus,
    Cluster,
    ClusteringActivity,
    Comment,
    EngineConfig,
    Level,
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
from .views import project_view

__all__ = [
    "DiscussionEngine",
    "DomainError",
    "ERROR_CODES",
    "EngineConfig",
    "Level",
    "ActivityStatus",
    "ProposalStatus",
    "ProposalSource",
    "ThreadOrigin",
    "PoolState",
    "User",
    "Thread",
    "Comment",
    "Cluster",
    "ClusteringActivity",
    "ThreadProposal",
    "Summary",
    "ReviewOutcome",
    "project_view",
    "canonical_article_ref",
    "discussion_id_for",
]
