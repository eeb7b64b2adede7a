"""Structured metric reports plus a plain-text engagement table.

The structured document carries one section per metric family; measure
sections hold baseline/system means and their delta (system - baseline).
The plain renderer mirrors the engagement table layout: one column pair
per topic, metrics as rows.
"""

from __future__ import annotations

from ..engine.errors import ValidationError
from .stats import EngagementStats

REPORT_FORMAT = "roundtable-report/1"

FOOTNOTES = [
    "Politeness score per comment is 0.5 + (P - N) / (2 * (P + N)) over positive (P) "
    "and negative (N) strategy counts, 0.5 when no strategies fire; the scalar "
    "combination is a documented implementation choice.",
    "A claim sentence counts as supported when the same comment contains at least "
    "one premise or evidence sentence; the same-comment linking rule is a "
    "documented implementation choice.",
]


def _measure_rows(measures: dict[str, dict[str, float]]) -> dict:
    rows = {}
    for name, values in measures.items():
        baseline = values.get("baseline")
        system = values.get("system")
        row = {"baseline": baseline, "system": system}
        if baseline is not None and system is not None:
            row["delta"] = system - baseline
        rows[name] = row
    return rows


def emit_report(
    engagement: list[EngagementStats] | None = None,
    diversity: dict[str, dict[str, float]] | None = None,
    argument: dict[str, dict[str, float]] | None = None,
    emotion: dict[str, dict[str, float]] | None = None,
    politeness: dict[str, dict[str, float]] | None = None,
) -> dict:
    """Assemble the machine-readable report; requires at least one section."""
    sections: dict = {}
    if engagement is not None:
        sections["engagement"] = [row.to_dict() for row in engagement]
    for name, measures in (
        ("diversity", diversity),
        ("argument_quality", argument),
        ("emotion", emotion),
        ("politeness", politeness),
    ):
        if measures is not None:
            sections[name] = _measure_rows(measures)
    if not sections:
        raise ValidationError("no metric tables supplied")
    return {"format": REPORT_FORMAT, "sections": sections, "footnotes": list(FOOTNOTES)}


def _fmt_mean_sd(mean: float | None, sd: float | None) -> str:
    if mean is None:
        return "-"
    if sd is None:
        return f"{mean:.2f}"
    return f"{mean:.2f} ({sd:.2f})"


def render_engagement_table(rows: list[EngagementStats]) -> str:
    """Plain-text table: metric rows, a Baseline/System column pair per topic."""
    topics = list(dict.fromkeys(row.topic for row in rows))
    conditions = ["baseline", "system"]
    cell: dict[tuple[str, str], EngagementStats] = {
        (row.topic, row.condition): row for row in rows
    }

    def row_values(label: str, getter) -> list[str]:
        values = [label]
        for topic in topics:
            for condition in conditions:
                stats = cell.get((topic, condition))
                values.append("-" if stats is None else getter(stats))
        return values

    header1 = [""]
    header2 = ["Metric"]
    for topic in topics:
        header1 += [topic, ""]
        header2 += ["Baseline", "System"]
    table = [
        header1,
        header2,
        row_values("Total comments", lambda s: str(s.total_comments)),
        row_values("Total replies", lambda s: str(s.total_replies)),
        row_values("Average like count (SD)", lambda s: _fmt_mean_sd(s.mean_likes, s.sd_likes)),
        row_values("Average word count (SD)", lambda s: _fmt_mean_sd(s.mean_words, s.sd_words)),
    ]
    widths = [max(len(row[i]) for row in table) for i in range(len(table[0]))]
    lines = []
    for row in table:
        lines.append("  ".join(value.ljust(width) for value, width in zip(row, widths)).rstrip())
    return "\n".join(lines)
