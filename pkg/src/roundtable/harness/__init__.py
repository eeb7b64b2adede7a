from .fuzz import FuzzFailure, FuzzResult, fuzz_protocol
from .report import PLAIN, STRUCTURED, UsageReport, render_report, usage_report_from_engine
from .runner import (
    IN_PROCESS,
    HttpTarget,
    InProcessTarget,
    LogicalClock,
    RunResult,
    ScenarioFailure,
    run_scenario,
)
from .scenario import Action, Scenario, load_scenario, parse_scenario

__all__ = [
    "UsageReport",
    "usage_report_from_engine",
    "render_report",
    "PLAIN",
    "STRUCTURED",
    "Scenario",
    "Action",
    "parse_scenario",
    "load_scenario",
    "run_scenario",
    "RunResult",
    "ScenarioFailure",
    "InProcessTarget",
    "HttpTarget",
    "LogicalClock",
    "IN_PROCESS",
    "fuzz_protocol",
    "FuzzResult",
    "FuzzFailure",
]
