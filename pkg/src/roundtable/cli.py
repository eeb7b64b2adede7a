"""Command-line interface.

``serve`` runs the HTTP service; ``run``/``fuzz``/``render`` drive the
scenario harness; the ``client`` group is a thin HTTP client for a
running service. All failure paths exit nonzero.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx

from .engine.errors import DomainError
from .harness.fuzz import FuzzFailure, fuzz_protocol
from .harness.report import PLAIN, STRUCTURED, UsageReport, render_report
from .harness.runner import IN_PROCESS, ScenarioFailure, run_scenario
from .harness.scenario import load_scenario


@click.group()
def main() -> None:
    """Collaborative discussion service, scenario harness, and client."""


@main.command()
@click.option("--host", default="127.0.0.1", envvar="ROUNDTABLE_HOST", show_default=True)
@click.option("--port", default=8000, envvar="ROUNDTABLE_PORT", show_default=True, type=int)
@click.option("--db", default=None, envvar="ROUNDTABLE_DB", help="SQLite event-log path.")
def serve(host: str, port: int, db: str | None) -> None:
    """Run the HTTP service (uvicorn)."""
    import os

    import uvicorn

    if db is not None:
        os.environ["ROUNDTABLE_DB"] = db
    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


@main.command()
@click.argument("scenario_paths", nargs=-1, required=True, type=click.Path(exists=True))
@click.option("--target", default=IN_PROCESS, show_default=True,
              help="'inprocess' or a service base URL.")
@click.option("--format", "fmt", default=PLAIN, type=click.Choice([PLAIN, STRUCTURED]),
              show_default=True)
@click.option("--out", type=click.Path(), default=None, help="Write the rendered report here.")
@click.option("--log", "log_path", type=click.Path(), default=None,
              help="Write the action log here.")
@click.option("--concurrency", default=1, show_default=True, type=int,
              help="Issue batches of independent actions in parallel (HTTP targets).")
def run(scenario_paths, target, fmt, out, log_path, concurrency) -> None:
    """Replay scenario files and compare against their expected reports."""
    reports: dict[str, UsageReport] = {}
    logs: list[str] = []
    failed = False
    for path in scenario_paths:
        scenario = load_scenario(path)
        try:
            result = run_scenario(scenario, target=target, concurrency=concurrency)
        except (ScenarioFailure, DomainError) as exc:
            click.echo(f"{scenario.name}: FAIL {exc}", err=True)
            sys.exit(2)
        reports[result.name] = result.report
        logs.extend(result.log)
        if result.ok:
            click.echo(f"{result.name}: ok ({result.target_kind})")
        else:
            failed = True
            click.echo(f"{result.name}: expected-report mismatch:", err=True)
            for field_name, (expected, actual) in result.diff.items():
                click.echo(f"  {field_name}: expected {expected}, got {actual}", err=True)
    rendered = render_report(reports, fmt)
    if out:
        Path(out).write_text(rendered + "\n", encoding="utf-8")
    else:
        click.echo(rendered)
    if log_path:
        Path(log_path).write_text("\n".join(logs) + "\n", encoding="utf-8")
    sys.exit(1 if failed else 0)


@main.command()
@click.option("--seed", default=7, show_default=True, type=int)
@click.option("--steps", default=500, show_default=True, type=int)
@click.option("--roster", default="3:4:4", show_default=True,
              help="LV0:LV1:LV2 participant counts.")
@click.option("--repro-dir", default=".", show_default=True, type=click.Path())
@click.option("--log", "log_path", type=click.Path(), default=None)
def fuzz(seed: int, steps: int, roster: str, repro_dir: str, log_path: str | None) -> None:
    """Run a seeded, invariant-checked random action stream."""
    try:
        result = fuzz_protocol(seed, steps, roster=roster, reproducer_dir=repro_dir)
    except FuzzFailure as exc:
        click.echo(f"FAIL {exc}", err=True)
        sys.exit(2)
    except DomainError as exc:
        click.echo(f"FAIL {exc}", err=True)
        sys.exit(2)
    click.echo(
        f"seed {result.seed}: {result.steps} steps, applied={result.applied}, "
        f"rejected={result.rejected}"
    )
    click.echo(render_report({f"fuzz-seed{seed}": result.report}))
    if log_path:
        Path(log_path).write_text(result.log_text, encoding="utf-8")


@main.command()
@click.argument("report_path", type=click.Path(exists=True))
@click.option("--format", "fmt", default=PLAIN, type=click.Choice([PLAIN, STRUCTURED]),
              show_default=True)
def render(report_path: str, fmt: str) -> None:
    """Render a stored usage report (JSON) as a table."""
    data = json.loads(Path(report_path).read_text(encoding="utf-8"))
    if data and all(isinstance(v, int) for v in data.values()):
        data = {Path(report_path).stem: data}
    reports = {name: UsageReport.from_dict(fields) for name, fields in data.items()}
    click.echo(render_report(reports, fmt))


# ---------------------------------------------------------------------------
# thin HTTP client


@main.group()
@click.option("--target", default="http://127.0.0.1:8000", show_default=True,
              envvar="ROUNDTABLE_TARGET")
@click.pass_context
def client(ctx: click.Context, target: str) -> None:
    """Talk to a running service."""
    ctx.obj = httpx.Client(base_url=target, timeout=30.0)


def _echo_response(response: httpx.Response) -> None:
    try:
        body = response.json()
    except ValueError:
        body = response.text
    click.echo(json.dumps(body, indent=2, sort_keys=True) if isinstance(body, (dict, list)) else body)
    if response.status_code >= 400:
        sys.exit(1)


@client.command("init")
@click.option("--ref", required=True, help="Article reference (canonicalized URL).")
@click.option("--text", default=None, help="Article text inline.")
@click.option("--text-file", type=click.Path(exists=True), default=None)
@click.pass_obj
def client_init(http: httpx.Client, ref: str, text: str | None, text_file: str | None) -> None:
    """Create the shared discussion for an article."""
    if text is None and text_file is None:
        raise click.UsageError("provide --text or --text-file")
    if text is None:
        text = Path(text_file).read_text(encoding="utf-8")
    _echo_response(http.post("/api/discussions", json={"article_ref": ref, "article_text": text}))


@client.command("register")
@click.option("--username", required=True)
@click.option("--level", required=True, type=click.Choice(["LV0", "LV1", "LV2"]))
@click.option("--ref", required=True)
@click.pass_obj
def client_register(http: httpx.Client, username: str, level: str, ref: str) -> None:
    """Register a session; prints the bearer token."""
    _echo_response(
        http.post(
            "/api/sessions",
            json={"username": username, "level": level, "article_ref": ref},
        )
    )


@client.command("comment")
@click.option("--token", required=True, envvar="ROUNDTABLE_TOKEN")
@click.option("--thread", required=True)
@click.option("--body", required=True)
@click.option("--parent", default=None)
@click.pass_obj
def client_comment(http: httpx.Client, token: str, thread: str, body: str, parent: str | None):
    _echo_response(
        http.post(
            f"/api/threads/{thread}/comments",
            json={"body": body, "parent_id": parent},
            headers={"Authorization": f"Bearer {token}"},
        )
    )


@client.command("view")
@click.option("--token", required=True, envvar="ROUNDTABLE_TOKEN")
@click.option("--discussion", required=True)
@click.pass_obj
def client_view(http: httpx.Client, token: str, discussion: str) -> None:
    _echo_response(
        http.get(
            f"/api/discussions/{discussion}/view",
            headers={"Authorization": f"Bearer {token}"},
        )
    )


@client.command("export")
@click.option("--discussion", required=True)
@click.option("--out", type=click.Path(), default=None)
@click.pass_obj
def client_export(http: httpx.Client, discussion: str, out: str | None) -> None:
    response = http.get(f"/api/discussions/{discussion}/export")
    if response.status_code >= 400 or out is None:
        _echo_response(response)
        return
    Path(out).write_text(json.dumps(response.json(), indent=2, sort_keys=True), encoding="utf-8")
    click.echo(f"wrote {out}")


@client.command("report")
@click.option("--discussion", required=True)
@click.pass_obj
def client_report(http: httpx.Client, discussion: str) -> None:
    response = http.get(f"/api/discussions/{discussion}/report")
    if response.status_code >= 400:
        _echo_response(response)
        return
    usage = UsageReport.from_dict(response.json()["usage"])
    click.echo(render_report({discussion: usage}))


if __name__ == "__main__":
    main()
