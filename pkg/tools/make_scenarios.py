#!/usr/bin/env python3
"""Generate the golden scenario files under scenarios/.

Each scenario is authored to land exactly on the published usage
statistics for its article (cluster/activity/summary/thread counts and
the created-thread titles), plus the comment and reply totals from the
engagement table. The generator emits deterministic, diff-friendly
line-oriented files and then replays each one in-process to verify the
expected report before writing.

Run from the repository root:  python3 tools/make_scenarios.py
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from roundtable.harness.runner import run_scenario  # noqa: E402
from roundtable.harness.scenario import parse_scenario  # noqa: E402

LV0 = ["ana", "abe", "ada"]
LV1 = ["bea", "ben", "bess", "bram", "brit"]
LV2 = ["cara", "cole", "cyra", "dean", "dora"]

OPENERS = [
    "I think", "From my side,", "Honestly,", "In my view,", "Reading this,",
    "My take is that", "It seems to me", "For what it is worth,",
]
POINTS = [
    "the article underplays the long term costs involved",
    "we should separate the short term noise from the structural problem",
    "both sides here have a point worth hearing out",
    "the reporting leaves out the people most affected",
    "regulation alone will not settle this question",
    "the incentives in this story are doing most of the work",
    "public trust is the real casualty in this situation",
    "the comparison drawn in the piece does not quite hold",
    "local context changes how this plays out in practice",
    "there is a quieter tradeoff hiding behind the headline",
    "accountability should not depend on who is watching",
    "the numbers cited deserve more scrutiny than they get",
]
TAILS = [
    "and that deserves more attention.",
    "so I would not rush to conclusions.",
    "which the discussion here keeps missing.",
    "and the thread above shows why.",
    "at least based on what is reported.",
    "though I am open to other readings.",
    "",
]

REPLY_POINTS = [
    "Fair point, but consider the opposite case too.",
    "I read that section differently than you did.",
    "Agreed, and there is precedent supporting this.",
    "That assumes facts the article never establishes.",
    "Good framing, it clarifies the earlier comments.",
    "Not sure the data backs that interpretation.",
]


def body(i: int) -> str:
    opener = OPENERS[i % len(OPENERS)]
    point = POINTS[(i * 5 + 3) % len(POINTS)]
    parts = [f"{opener} {point}"]
    tail = TAILS[(i * 3 + 1) % len(TAILS)]
    if tail:
        parts[0] += f" {tail}"
    if i % 4 == 0:
        parts.append(POINTS[(i * 7 + 5) % len(POINTS)].capitalize() + ".")
    return " ".join(parts)


def reply_body(i: int) -> str:
    return REPLY_POINTS[i % len(REPLY_POINTS)]


@dataclass
class Spec:
    name: str
    ref: str
    text: str
    # (topic, question) x4; first three become the initial threads.
    pairs: list[tuple[str, str]]
    # per initial thread t1..t3
    creations: list[int]
    extensions: list[int]
    pendings: list[int]
    denieds: list[int]
    free_initial: list[int]
    free_new: list[int]          # per accepted new thread
    replies_total: int
    summarize_clusters: int      # first N clusters get summaries
    # (topic, question, source, verdicts) where verdicts is e.g. "AAA" / "A" / ""
    thread_proposals: list[tuple[str, str, str, str]]
    # pending activity vote plans beyond the 2/3 ones, per scenario
    pending_votes: list[str] = field(default_factory=list)
    denied_approvals: list[int] = field(default_factory=list)
    likes: int = 0
    edits: int = 0
    expect: dict = field(default_factory=dict)


def build(spec: Spec) -> str:
    lines: list[str] = []
    out = lines.append
    out(f"# Golden usage scenario: {spec.name} article")
    out("# Generated by tools/make_scenarios.py; regenerate rather than hand-edit.")
    out(f"scenario {spec.name}")
    out("config cluster_approve=3 cluster_deny=3 thread_approve=3 thread_deny=3 topics=3")
    for name in LV0:
        out(f"user {name} LV0")
    for name in LV1:
        out(f"user {name} LV1")
    for name in LV2:
        out(f"user {name} LV2")
    pairs = " ".join(f'pair="{t}|{q}"' for t, q in spec.pairs)
    out(f'init ref="{spec.ref}" text="{spec.text}" {pairs}')
    out("")

    everyone = LV0 + LV1 + LV2
    counters = {"c": 0, "r": 0, "a": 0, "k": 0, "s": 0, "p": 0, "T": 0}
    free_comments: list[str] = []
    authors: dict[str, str] = {}

    def post(thread: str) -> str:
        counters["c"] += 1
        cid = f"c{counters['c']:03d}"
        author = everyone[(counters["c"] * 7) % len(everyone)]
        authors[cid] = author
        out(f'{author} comment thread={thread} body="{body(counters["c"])}" as={cid}')
        return cid

    def vote_cluster(activity: str, verdicts: str, reviewer_offset: int, accept_alias: str | None):
        # verdicts: sequence of A/D applied by distinct LV1 reviewers
        for i, verdict in enumerate(verdicts):
            reviewer = LV1[(reviewer_offset + i) % len(LV1)]
            word = "approve" if verdict == "A" else "decline"
            suffix = ""
            if accept_alias and verdict == "A" and verdicts[: i + 1].count("A") == 3:
                suffix = f" as={accept_alias}"
            out(f"{reviewer} review {activity} {word}{suffix}")

    # --- comments and clustering per initial thread -----------------------
    cluster_aliases: list[str] = []
    for t_index in range(3):
        thread = f"t{t_index + 1}"
        out(f"# --- thread {thread}: {spec.pairs[t_index][0]}")
        creations = spec.creations[t_index]
        extensions = spec.extensions[t_index]
        pendings = spec.pendings[t_index]
        denieds = spec.denieds[t_index]

        creation_pairs = [(post(thread), post(thread)) for _ in range(creations)]
        extension_comments = [post(thread) for _ in range(extensions)]
        pending_pairs = [(post(thread), post(thread)) for _ in range(pendings)]
        denied_pairs = [(post(thread), post(thread)) for _ in range(denieds)]
        for _ in range(spec.free_initial[t_index]):
            free_comments.append(post(thread))

        # accepted creations, then accepted extensions into those clusters
        thread_clusters = []
        for moved, anchor in creation_pairs:
            counters["a"] += 1
            activity = f"a{counters['a']:02d}"
            proposer = LV0[counters["a"] % len(LV0)]
            out(f"{proposer} propose move={moved} onto={anchor} as={activity}")
            counters["k"] += 1
            alias = f"k{counters['k']}"
            vote_cluster(activity, "AAA", counters["a"], alias)
            thread_clusters.append(alias)
            cluster_aliases.append(alias)
        for i, moved in enumerate(extension_comments):
            counters["a"] += 1
            activity = f"a{counters['a']:02d}"
            proposer = LV0[counters["a"] % len(LV0)]
            target = thread_clusters[i % len(thread_clusters)]
            out(f"{proposer} propose move={moved} into={target} as={activity}")
            vote_cluster(activity, "AAA", counters["a"], None)

        for moved, anchor in pending_pairs:
            counters["a"] += 1
            activity = f"a{counters['a']:02d}"
            proposer = LV0[counters["a"] % len(LV0)]
            out(f"{proposer} propose move={moved} onto={anchor} as={activity}")
            plan = spec.pending_votes.pop(0) if spec.pending_votes else "AA"
            vote_cluster(activity, plan, counters["a"], None)

        for moved, anchor in denied_pairs:
            counters["a"] += 1
            activity = f"a{counters['a']:02d}"
            proposer = LV0[counters["a"] % len(LV0)]
            out(f"{proposer} propose move={moved} onto={anchor} as={activity}")
            approvals = spec.denied_approvals.pop(0) if spec.denied_approvals else 0
            vote_cluster(activity, "A" * approvals + "DDD", counters["a"], None)
        out("")

    # --- summaries --------------------------------------------------------
    out("# --- summaries")
    for i in range(spec.summarize_clusters):
        counters["s"] += 1
        author = LV1[(i * 2) % len(LV1)]
        text = (
            f"Members broadly agree on {POINTS[(i * 5) % len(POINTS)].split()[1]} "
            f"while weighing costs and accountability."
        )
        out(f'{author} summarize cluster={cluster_aliases[i]} text="{text}" as=s{counters["s"]}')
    out("")

    # --- thread proposals ---------------------------------------------------
    out("# --- thread lifecycle")
    accepted_threads = []
    for topic, question, source, verdicts in spec.thread_proposals:
        counters["p"] += 1
        proposal = f"p{counters['p']}"
        proposer = LV2[counters["p"] % len(LV2)]
        out(
            f'{proposer} propose_thread topic="{topic}" question="{question}" '
            f"source={source} as={proposal}"
        )
        approvals = 0
        for i, verdict in enumerate(verdicts):
            reviewer = LV2[(counters["p"] + 1 + i) % len(LV2)]
            if reviewer == proposer:
                reviewer = LV2[(counters["p"] + 2 + i) % len(LV2)]
            word = "approve" if verdict == "A" else "decline"
            suffix = ""
            if verdict == "A":
                approvals += 1
                if approvals == 3:
                    counters["T"] += 1
                    suffix = f" as=T{counters['T'] + 3}"
            out(f"{reviewer} review_thread {proposal} {word}{suffix}")
        if approvals >= 3:
            accepted_threads.append(f"T{counters['T'] + 3}")
    out("")

    # --- discussion continues in the accepted threads ----------------------
    out("# --- follow-up comments in accepted threads")
    for i, thread_alias in enumerate(accepted_threads):
        for _ in range(spec.free_new[i]):
            counters["c"] += 1
            cid = f"c{counters['c']:03d}"
            author = everyone[(counters["c"] * 7) % len(everyone)]
            authors[cid] = author
            out(
                f'{author} comment thread={thread_alias} '
                f'body="{body(counters["c"])}" as={cid}'
            )
            free_comments.append(cid)
    out("")

    # --- replies, likes, edits ---------------------------------------------
    out("# --- replies and reactions")
    for i in range(spec.replies_total):
        counters["r"] += 1
        target = free_comments[i % len(free_comments)]
        author = everyone[(i * 5 + 2) % len(everyone)]
        out(f'{author} reply parent={target} body="{reply_body(i)}" as=r{counters["r"]:03d}')
    for i in range(spec.likes):
        target = free_comments[(i * 3 + 1) % len(free_comments)]
        author = everyone[(i * 11 + 4) % len(everyone)]
        out(f"{author} like {target}")
    for i in range(spec.edits):
        target = free_comments[(i * 7 + 2) % len(free_comments)]
        out(f'{authors[target]} edit {target} body="{body(800 + i)}"')
    out("")

    expect = " ".join(f"{key}={value}" for key, value in spec.expect.items())
    out(f"expect {expect}")
    out("")
    return "\n".join(lines)


def tech_spec() -> Spec:
    return Spec(
        name="tech",
        ref="cnn:ai-image-tools-and-elections",
        text=(
            "A widely used image generator is producing convincing fake photos of public "
            "figures during an election season, and platform policies are struggling to "
            "keep pace with what users share."
        ),
        pairs=[
            ("AI Image Generation Ethics", "Where should creators draw the line with synthetic images of real people?"),
            ("Political Misinformation Online", "How should platforms handle fabricated political imagery spreading quickly?"),
            ("Impact of AI on Elections", "What effect could synthetic media have on how people vote?"),
            ("Responsibility of Tech Companies", "Should companies shipping generative tools answer for how those tools get used?"),
        ],
        creations=[2, 2, 2],
        extensions=[2, 2, 1],
        pendings=[4, 4, 4],
        denieds=[5, 4, 4],
        free_initial=[4, 3, 3],
        free_new=[4, 4, 4],
        replies_total=36,
        summarize_clusters=6,
        thread_proposals=[
            ("Responsibility of Tech Companies",
             "Should companies shipping generative tools answer for how those tools get used?",
             "ai", "AAA"),
            ("Legal Accountability for AI-Generated Misinformation",
             "Who should be liable when generated images mislead voters?",
             "user", "AAA"),
            ("Misuse of AI-based Images",
             "What everyday harms from fabricated images worry you most?",
             "user", "AAA"),
            ("Positive Applications of Grok",
             "Are there constructive uses of this image tool worth protecting?",
             "user", "A"),
        ],
        # 10 of 12 pending sit at two approvals; the rest have one vote each
        pending_votes=["AA"] * 10 + ["A", "D"],
        denied_approvals=[0, 1, 0, 2, 0, 0, 1, 0, 0, 2, 0, 1, 0],
        likes=44,
        expect=dict(
            clusters=6, activities=36, accepted=11, pending=12, denied=13, superseded=0,
            summaries=6, suggested_threads=4, accepted_threads=3, pending_threads=1,
            denied_threads=0,
        ),
    )


def crime_spec() -> Spec:
    return Spec(
        name="crime",
        ref="cnn:celebrity-drug-death-prosecutions",
        text=(
            "Prosecutors are pursuing charges around a celebrity overdose, and legal "
            "experts argue the case will shape how suppliers and prescribing doctors are "
            "held to account in future drug related deaths."
        ),
        pairs=[
            ("Celebrity Drug-Related Deaths", "Does prosecuting high profile overdose cases change anything for ordinary ones?"),
            ("Accountability of Drug Dealers", "Who along the supply chain bears responsibility for an overdose death?"),
            ("Publicity and Prosecution", "Does media attention help or distort drug death prosecutions?"),
            ("Medical professional responsibility", "What duty do prescribing professionals owe patients at risk of misuse?"),
        ],
        creations=[3, 2, 2],
        extensions=[2, 1, 1],
        pendings=[4, 4, 4],
        denieds=[3, 3, 2],
        free_initial=[3, 3, 2],
        free_new=[5, 4, 4],
        replies_total=38,
        summarize_clusters=2,
        thread_proposals=[
            ("Legal Proceedings for Drug-Related Deaths",
             "Which standards of proof fit cases built on supply rather than intent?",
             "user", "AAA"),
            ("Reducing Overdose Incidents",
             "What prevention efforts would actually reduce overdose deaths?",
             "user", "AAA"),
            ("Medical professional responsibility",
             "What duty do prescribing professionals owe patients at risk of misuse?",
             "ai", "AAA"),
            ("Medical Policy",
             "Should treatment access change faster than enforcement policy?",
             "user", "A"),
        ],
        # 8 of 12 pending at two approvals
        pending_votes=["AA"] * 8 + ["A", "A", "D", ""],
        denied_approvals=[0, 1, 0, 0, 2, 0, 1, 0],
        likes=40,
        expect=dict(
            clusters=7, activities=31, accepted=11, pending=12, denied=8, superseded=0,
            summaries=2, suggested_threads=4, accepted_threads=3, pending_threads=1,
            denied_threads=0,
        ),
    )


def economy_spec() -> Spec:
    return Spec(
        name="economy",
        ref="cnn:olympics-hosting-costs",
        text=(
            "Ahead of the games, the host city is moving unhoused residents out of central "
            "districts while budget overruns mount, reviving questions about who pays for "
            "and who benefits from hosting the event."
        ),
        pairs=[
            ("Olympic Games Housing Impact", "How should host cities balance event logistics with residents housing needs?"),
            ("Homelessness and Urban Development", "What obligations come with redeveloping areas where unhoused people live?"),
            ("Social Responsibility in Olympics", "What social commitments should organizers make binding before a games?"),
            ("Gentrification Effects of the Olympics", "Who gains and who loses when a games accelerates neighborhood change?"),
        ],
        creations=[2, 2, 1],
        extensions=[1, 1, 0],
        pendings=[1, 1, 0],
        denieds=[3, 2, 2],
        free_initial=[6, 6, 6],
        free_new=[14],
        replies_total=25,
        summarize_clusters=5,
        thread_proposals=[
            ("Other Issues Regarding the Olympics",
             "What parts of hosting deserve scrutiny beyond housing and budgets?",
             "user", "AAA"),
            ("Gentrification Effects of the Olympics",
             "Who gains and who loses when a games accelerates neighborhood change?",
             "ai", "AA"),
            ("Building infrastructure only once to have a permanent location to host all types of sport",
             "Would a permanent host site fix the recurring cost problem?",
             "user", "A"),
        ],
        pending_votes=["AA", "AA"],
        denied_approvals=[0, 1, 0, 0, 2, 0, 0],
        likes=36,
        expect=dict(
            clusters=5, activities=16, accepted=7, pending=2, denied=7, superseded=0,
            summaries=5, suggested_threads=3, accepted_threads=1, pending_threads=2,
            denied_threads=0,
        ),
    )


EXPECTED_VOLUME = {"tech": (89, 36), "crime": (79, 38), "economy": (62, 25)}


def main() -> int:
    out_dir = ROOT / "scenarios"
    out_dir.mkdir(exist_ok=True)
    for spec in (tech_spec(), crime_spec(), economy_spec()):
        text = build(spec)
        scenario = parse_scenario(text, name_hint=spec.name)
        top_level = sum(1 for a in scenario.actions if a.op == "comment")
        replies = sum(1 for a in scenario.actions if a.op == "reply")
        if (top_level, replies) != EXPECTED_VOLUME[spec.name]:
            print(f"{spec.name}: volume mismatch {(top_level, replies)}")
            return 1
        result = run_scenario(scenario)
        if not result.ok:
            print(f"{spec.name}: report mismatch {result.diff}")
            return 1
        path = out_dir / f"{spec.name}.scn"
        path.write_text(text, encoding="utf-8")
        print(f"{spec.name}: ok -> {path} ({len(text.splitlines())} lines)")
        print(f"   report: {result.report.to_dict()}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
