"""Run-wide knobs shared by the library and the command line tool.

A RunConfig pins every parameter that can influence an output, so two runs
with equal configs (and equal seeds) produce byte-identical reports.  Wall
clock timings are therefore never part of machine-readable output.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

TOOL_VERSION = "0.1.0"

# Longest coefficient vector the dense method will allocate by default.
DEFAULT_DEGREE_CAP = 20_000_000

# Step limit for prime searches in a fixed residue class.
DEFAULT_SEARCH_STEPS = 100_000

CACHE_ENV_VAR = "CYCLO_CACHE"


@dataclass(frozen=True)
class RunConfig:
    degree_cap: int = DEFAULT_DEGREE_CAP
    search_steps: int = DEFAULT_SEARCH_STEPS
    jobs: int = 1
    seed: int = 0
    cache_path: str | None = None

    def __post_init__(self):
        if self.degree_cap < 1:
            raise ValueError("degree_cap must be positive")
        if self.search_steps < 1:
            raise ValueError("search_steps must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")


def cache_path_from_env() -> str | None:
    """Cache file named by the environment, or None when unset/empty."""
    path = os.environ.get(CACHE_ENV_VAR, "").strip()
    return path or None
