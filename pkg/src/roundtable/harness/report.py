"""Usage reports: the per-article activity statistics table.

Counts clusters, clustering activities by outcome, summaries, and thread
proposals by outcome, with a plain renderer that mirrors the published
layout (clustering / summary / threading column groups).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields

from ..engine.engine import DiscussionEngine
from ..engine.errors import ValidationError
from ..engine.models import ActivityStatus, ProposalStatus


@dataclass(frozen=True)
class UsageReport:
    created_clusters: int = 0
    clustering_activities: int = 0
    accepted_activities: int = 0
    pending_activities: int = 0
    denied_activities: int = 0
    superseded_activities: int = 0
    created_summaries: int = 0
    suggested_threads: int = 0
    accepted_threads: int = 0
    pending_threads: int = 0
    denied_threads: int = 0

    def validate(self) -> "UsageReport":
        partition = (
            self.accepted_activities
            + self.pending_activities
            + self.denied_activities
            + self.superseded_activities
        )
        if partition != self.clustering_activities:
            raise ValidationError(
                f"activity partition {partition} != total {self.clustering_activities}"
            )
        if self.created_clusters > self.accepted_activities:
            raise ValidationError("more clusters than accepted activities")
        thread_partition = self.accepted_threads + self.pending_threads + self.denied_threads
        if thread_partition != self.suggested_threads:
            raise ValidationError(
                f"thread partition {thread_partition} != total {self.suggested_threads}"
            )
        return self

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict) -> "UsageReport":
        known = {f.name for f in fields(cls)}
        return cls(**{k: int(v) for k, v in data.items() if k in known})

    def diff(self, other: "UsageReport") -> dict[str, tuple[int, int]]:
        """Fields where self (expected) and other (actual) disagree."""
        out = {}
        for f in fields(self):
            a, b = getattr(self, f.name), getattr(other, f.name)
            if a != b:
                out[f.name] = (a, b)
        return out


def usage_report_from_engine(engine: DiscussionEngine) -> UsageReport:
    statuses = [a.status for a in engine.activities.values()]
    proposal_statuses = [p.status for p in engine.proposals.values()]
    return UsageReport(
        created_clusters=engine.clusters_created,
        clustering_activities=len(statuses),
        accepted_activities=statuses.count(ActivityStatus.ACCEPTED),
        pending_activities=statuses.count(ActivityStatus.PENDING),
        denied_activities=statuses.count(ActivityStatus.DENIED),
        superseded_activities=statuses.count(ActivityStatus.SUPERSEDED),
        created_summaries=engine.summaries_created,
        suggested_threads=len(proposal_statuses),
        accepted_threads=proposal_statuses.count(ProposalStatus.ACCEPTED),
        pending_threads=proposal_statuses.count(ProposalStatus.PENDING),
        denied_threads=proposal_statuses.count(ProposalStatus.DENIED),
    ).validate()


PLAIN = "plain"
STRUCTURED = "structured"

_COLUMNS = [
    ("Created clusters", "created_clusters"),
    ("Total activities", "clustering_activities"),
    ("Accepted", "accepted_activities"),
    ("Pending", "pending_activities"),
    ("Denied", "denied_activities"),
    ("Superseded", "superseded_activities"),
    ("Created summaries", "created_summaries"),
    ("Suggested threads", "suggested_threads"),
    ("Accepted", "accepted_threads"),
    ("Pending", "pending_threads"),
    ("Denied", "denied_threads"),
]


def render_report(reports: dict[str, UsageReport], fmt: str = PLAIN) -> str:
    """Render one or more named usage reports.

    Plain output groups columns as Clustering | Summary | Threading like
    the published usage table; structured output is JSON.
    """
    if fmt == STRUCTURED:
        return json.dumps(
            {name: report.to_dict() for name, report in reports.items()},
            indent=2,
            sort_keys=True,
        )
    if fmt != PLAIN:
        raise ValidationError(f"unknown report format: {fmt!r}")

    labels = [label for label, _ in _COLUMNS]
    rows = []
    for name, report in reports.items():
        rows.append([name] + [str(getattr(report, attr)) for _, attr in _COLUMNS])
    widths = [max(len(str(x)) for x in col) for col in zip(["Scenario"] + labels, *rows)]

    group_line = (
        " " * (widths[0] + 2)
        + "| Clustering".ljust(sum(widths[1:7]) + 6 * 2)
        + "| Summary".ljust(widths[7] + 2 + 2)
        + "| Threading"
    )
    header = ["Scenario"] + labels
    header_line = "  ".join(h.ljust(w) for h, w in zip(header, widths))
    lines = [group_line, header_line, "-" * len(header_line)]
    for row in rows:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines)
