"""Exact filling witnesses, obstructions and certificate rechecks.

Thin wrapper over the C++ extension. Reports and configs are JSON; the
dict-level helpers here do the (de)serialization so callers can stay in
plain Python structures. Exact numbers stay strings ("p/q",
"p/q+r/s*sqrt(d)") end to end.
"""

import json

from ._fillinglab import (
    ConfigError,
    ReportParseError,
    __version__,
    act_on_cylinders,
    assign_region,
    contraction_exponent,
    cover_check,
    exit_code_json,
    lambda_plus,
    min_opposition_cover,
    opposite,
    plane_summary,
    r_constant,
    recheck_json,
    run_scenario_json,
    two_filling,
    verify_constants,
)

__all__ = [
    "ConfigError",
    "ReportParseError",
    "__version__",
    "act_on_cylinders",
    "assign_region",
    "contraction_exponent",
    "cover_check",
    "exit_code",
    "exit_code_json",
    "lambda_plus",
    "min_opposition_cover",
    "opposite",
    "plane_summary",
    "r_constant",
    "recheck",
    "recheck_json",
    "run_scenario",
    "run_scenario_json",
    "two_filling",
    "verify_constants",
]


def run_scenario(config):
    """Run one scenario from a config dict; returns the report as a dict."""
    return json.loads(run_scenario_json(json.dumps(config)))


def recheck(report):
    """Re-verify a report dict; returns {"ok": bool, "failures": [str]}."""
    return recheck_json(json.dumps(report))


def exit_code(report):
    """Exit code a CLI run producing this report dict would use."""
    return exit_code_json(json.dumps(report))
