"""Exact fundamental-group computations for stable Godeaux surfaces."""

import json as _json

from ._core import (
    CosetLimitExceeded,
    Error,
    ParseError,
    Presentation,
    ValidationError,
    cokernel_invariants,
    eplus_presentation,
    hermite_normal_form,
    smith_normal_form,
    twisting_number,
)
from . import _core

__all__ = [
    "CosetLimitExceeded",
    "Error",
    "ParseError",
    "Presentation",
    "ValidationError",
    "cokernel_invariants",
    "eplus_presentation",
    "hermite_normal_form",
    "run_scenario",
    "smith_normal_form",
    "twisting_number",
    "verify_catalogue",
]


def run_scenario(path, max_cosets=1_000_000):
    """Run one scenario file and return its report as a dict."""
    return _json.loads(_core.run_scenario_json(str(path), max_cosets))


def verify_catalogue(directory, max_cosets=1_000_000):
    """Run every scenario in a directory; returns {"reports": [...], "summary": {...}}."""
    return _json.loads(_core.verify_catalogue_json(str(directory), max_cosets))
