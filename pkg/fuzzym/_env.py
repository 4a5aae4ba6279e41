from __future__ import annotations

from os import environ as env

LOG_LEVEL = env.get("FUZZYM_LOG_LEVEL", "WARNING").upper()
"""Threshold for class-based log sinks."""

NORM_OVERRIDE_VAR = "FUZZYM_NORM_OVERRIDE"
"""Environment variable that overrides the norm clause of a description file."""

DEFAULT_MAX_STEPS = 1000
"""Step budget for machine acceptance searches."""
DEFAULT_MAX_TICKS = 1000
"""Tick budget for P-system runs."""
DEFAULT_CUTOFF = 0.0
"""Degree a word must exceed to be listed in a fuzzy language."""


def norm_override() -> str | None:
    """
    Read the norm override at call time.

    Returns:
        The raw norm name, or None when unset or blank.
    """
    value = env.get(NORM_OVERRIDE_VAR, "").strip()
    return value or None
