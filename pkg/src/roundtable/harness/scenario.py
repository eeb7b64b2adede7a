"""Line-oriented scenario files.

One action per line, shell-style quoting, ``#`` comments. Structure:

    scenario tech
    config cluster_approve=3 cluster_deny=3 thread_approve=3 thread_deny=3 topics=3
    user ana LV0
    user bo LV1
    init ref="cnn:some-article" text="..." pair="Topic One Here Now|Question?" pair="..."
    ana comment thread=t1 body="..." as=c1
    ana propose move=c1 onto=c2 as=a1
    bo review a1 approve as=k1
    bo summarize cluster=k1 text="..." as=s1
    el propose_thread topic="..." question="..." source=ai as=p1
    fay review_thread p1 approve as=t4
    ana like c1
    ana reply parent=c1 body="..." as=c9
    ana edit c1 body="..."
    ana delete c9
    expect clusters=1 activities=1 accepted=1 ...

``as=`` binds an alias to the id the engine assigns; later lines refer
to aliases (or directly to deterministic engine ids like t1..t3 for the
initial threads). Every actor must appear in the roster, and every
reference must be introduced by an earlier line.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from pathlib import Path

from ..engine.errors import ValidationError
from ..engine.models import EngineConfig
from .report import UsageReport

ACTION_OPS = {
    "comment",
    "reply",
    "edit",
    "delete",
    "like",
    "propose",
    "review",
    "summarize",
    "propose_thread",
    "review_thread",
}

_CONFIG_KEYS = {
    "cluster_approve": "cluster_approval_threshold",
    "cluster_deny": "cluster_denial_threshold",
    "thread_approve": "thread_approval_threshold",
    "thread_deny": "thread_denial_threshold",
    "topics": "initial_topic_count",
}

_EXPECT_KEYS = {
    "clusters": "created_clusters",
    "activities": "clustering_activities",
    "accepted": "accepted_activities",
    "pending": "pending_activities",
    "denied": "denied_activities",
    "superseded": "superseded_activities",
    "summaries": "created_summaries",
    "suggested_threads": "suggested_threads",
    "accepted_threads": "accepted_threads",
    "pending_threads": "pending_threads",
    "denied_threads": "denied_threads",
}


@dataclass
class Action:
    index: int       # position in the action list (0-based)
    line_no: int
    actor: str
    op: str
    args: dict[str, str]
    alias: str | None = None


@dataclass
class Scenario:
    name: str = ""
    config: EngineConfig = field(default_factory=EngineConfig)
    roster: list[tuple[str, str]] = field(default_factory=list)
    article_ref: str = ""
    article_text: str = ""
    topic_pairs: list[tuple[str, str]] = field(default_factory=list)
    actions: list[Action] = field(default_factory=list)
    expected: UsageReport | None = None


def _kv(tokens: list[str], line_no: int) -> dict[str, str]:
    out: dict[str, str] = {}
    for token in tokens:
        if "=" not in token:
            raise ValidationError(f"line {line_no}: expected key=value, got {token!r}")
        key, value = token.split("=", 1)
        if key == "pair":
            out.setdefault("pairs", "")
            out["pairs"] += ("\x1f" if out["pairs"] else "") + value
        else:
            out[key] = value
    return out


def _positional_kv(tokens: list[str], line_no: int) -> tuple[list[str], dict[str, str]]:
    positional = []
    kv_tokens = []
    for token in tokens:
        (kv_tokens if "=" in token else positional).append(token)
    return positional, _kv(kv_tokens, line_no)


class _Parser:
    def __init__(self, text: str, name_hint: str):
        self.scenario = Scenario(name=name_hint)
        self.defined: set[str] = set()
        self.usernames: set[str] = set()
        self.saw_init = False
        self.text = text

    def parse(self) -> Scenario:
        for line_no, raw in enumerate(self.text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                tokens = shlex.split(line, comments=True)
            except ValueError as exc:
                raise ValidationError(f"line {line_no}: {exc}") from exc
            if not tokens:
                continue
            self._dispatch(tokens, line_no)
        if not self.saw_init:
            raise ValidationError("scenario has no init line")
        return self.scenario

    def _dispatch(self, tokens: list[str], line_no: int) -> None:
        head = tokens[0]
        if head == "scenario":
            if len(tokens) != 2:
                raise ValidationError(f"line {line_no}: scenario takes one name")
            self.scenario.name = tokens[1]
        elif head == "config":
            self._config(tokens[1:], line_no)
        elif head == "user":
            self._user(tokens[1:], line_no)
        elif head == "init":
            self._init(tokens[1:], line_no)
        elif head == "expect":
            self._expect(tokens[1:], line_no)
        elif head in self.usernames:
            self._action(head, tokens[1:], line_no)
        else:
            raise ValidationError(f"line {line_no}: unknown actor or directive {head!r}")

    def _config(self, tokens: list[str], line_no: int) -> None:
        if self.saw_init:
            raise ValidationError(f"line {line_no}: config must precede init")
        kv = _kv(tokens, line_no)
        values = {}
        for key, value in kv.items():
            if key not in _CONFIG_KEYS:
                raise ValidationError(f"line {line_no}: unknown config key {key!r}")
            values[_CONFIG_KEYS[key]] = int(value)
        self.scenario.config = EngineConfig(**{**self.scenario.config.to_dict(), **values})

    def _user(self, tokens: list[str], line_no: int) -> None:
        if len(tokens) != 2:
            raise ValidationError(f"line {line_no}: user takes <name> <level>")
        name, level = tokens
        if name in self.usernames:
            raise ValidationError(f"line {line_no}: duplicate user {name!r}")
        if level not in ("LV0", "LV1", "LV2"):
            raise ValidationError(f"line {line_no}: bad level {level!r}")
        self.usernames.add(name)
        self.scenario.roster.append((name, level))

    def _init(self, tokens: list[str], line_no: int) -> None:
        if self.saw_init:
            raise ValidationError(f"line {line_no}: duplicate init")
        kv = _kv(tokens, line_no)
        for required in ("ref", "text", "pairs"):
            if required not in kv:
                raise ValidationError(f"line {line_no}: init requires {required}")
        self.scenario.article_ref = kv["ref"]
        self.scenario.article_text = kv["text"]
        for chunk in kv["pairs"].split("\x1f"):
            if "|" not in chunk:
                raise ValidationError(f"line {line_no}: pair must be 'topic|question'")
            topic, question = chunk.split("|", 1)
            self.scenario.topic_pairs.append((topic, question))
        self.saw_init = True
        # Initial threads get deterministic engine ids.
        for i in range(self.scenario.config.initial_topic_count):
            self.defined.add(f"t{i + 1}")

    def _expect(self, tokens: list[str], line_no: int) -> None:
        kv = _kv(tokens, line_no)
        values = {}
        for key, value in kv.items():
            if key not in _EXPECT_KEYS:
                raise ValidationError(f"line {line_no}: unknown expect key {key!r}")
            values[_EXPECT_KEYS[key]] = int(value)
        self.scenario.expected = UsageReport(**values).validate()

    def _require_ref(self, ref: str, line_no: int) -> None:
        if ref not in self.defined:
            raise ValidationError(f"line {line_no}: reference to undefined id {ref!r}")

    def _action(self, actor: str, tokens: list[str], line_no: int) -> None:
        if not self.saw_init:
            raise ValidationError(f"line {line_no}: actions must follow init")
        if not tokens:
            raise ValidationError(f"line {line_no}: missing operation")
        op, rest = tokens[0], tokens[1:]
        if op not in ACTION_OPS:
            raise ValidationError(f"line {line_no}: unknown operation {op!r}")
        positional, kv = _positional_kv(rest, line_no)
        alias = kv.pop("as", None)

        refs_to_check: list[str] = []
        if op == "comment":
            self._need(kv, ("thread", "body"), line_no)
            refs_to_check.append(kv["thread"])
        elif op == "reply":
            self._need(kv, ("parent", "body"), line_no)
            refs_to_check.append(kv["parent"])
        elif op == "edit":
            kv["target"] = self._one_positional(positional, line_no)
            self._need(kv, ("body",), line_no)
            refs_to_check.append(kv["target"])
        elif op in ("delete", "like"):
            kv["target"] = self._one_positional(positional, line_no)
            refs_to_check.append(kv["target"])
        elif op == "propose":
            self._need(kv, ("move",), line_no)
            if ("onto" in kv) == ("into" in kv):
                raise ValidationError(f"line {line_no}: propose needs exactly one of onto/into")
            refs_to_check.append(kv["move"])
            refs_to_check.append(kv.get("onto") or kv["into"])
        elif op in ("review", "review_thread"):
            if len(positional) != 2 or positional[1] not in ("approve", "decline"):
                raise ValidationError(
                    f"line {line_no}: {op} takes <id> approve|decline"
                )
            kv["target"], kv["verdict"] = positional
            refs_to_check.append(kv["target"])
        elif op == "summarize":
            self._need(kv, ("cluster", "text"), line_no)
            refs_to_check.append(kv["cluster"])
        elif op == "propose_thread":
            self._need(kv, ("topic", "question", "source"), line_no)
            if kv["source"] not in ("user", "ai"):
                raise ValidationError(f"line {line_no}: source must be user or ai")

        for ref in refs_to_check:
            self._require_ref(ref, line_no)
        if alias is not None:
            if alias in self.defined:
                raise ValidationError(f"line {line_no}: alias {alias!r} already defined")
            self.defined.add(alias)
        self.scenario.actions.append(
            Action(
                index=len(self.scenario.actions),
                line_no=line_no,
                actor=actor,
                op=op,
                args=kv,
                alias=alias,
            )
        )

    @staticmethod
    def _need(kv: dict[str, str], keys: tuple[str, ...], line_no: int) -> None:
        for key in keys:
            if key not in kv:
                raise ValidationError(f"line {line_no}: missing {key}=")

    @staticmethod
    def _one_positional(positional: list[str], line_no: int) -> str:
        if len(positional) != 1:
            raise ValidationError(f"line {line_no}: expected exactly one target id")
        return positional[0]


def parse_scenario(text: str, name_hint: str = "") -> Scenario:
    return _Parser(text, name_hint).parse()


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    return parse_scenario(path.read_text(encoding="utf-8"), name_hint=path.stem)
