"""Scenario runner: configuration, concurrency and artifact writing.

``run_scenario`` and ``run_sweep`` live in ``src.runner.scenario``; the bound
registry imports the pool from this package, so it is not re-exported here.
"""

from .models import Scenario, load_scenario, parse_scenario
from .pool import gather_map, run_parallel

__all__ = [
    "Scenario",
    "load_scenario",
    "parse_scenario",
    "gather_map",
    "run_parallel",
]
