"""Executable checks over the corpus, counterexample search, and replay."""

from baerlab.verifier.registry import CHECKS, Check, Context, NotApplicable, check_names, get_check
from baerlab.verifier.runner import (
    CheckReport,
    junit_xml,
    materialize,
    replay_certificate,
    run_check,
)
from baerlab.verifier.search import GOALS, find_counterexample, goal_names

__all__ = [
    "CHECKS",
    "Check",
    "CheckReport",
    "Context",
    "GOALS",
    "NotApplicable",
    "check_names",
    "find_counterexample",
    "get_check",
    "goal_names",
    "junit_xml",
    "materialize",
    "replay_certificate",
    "run_check",
]
