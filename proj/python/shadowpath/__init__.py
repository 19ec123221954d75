"""Exposure-minimizing path planning over gridded terrain."""

import json

from ._core import (
    ConfigError,
    Corridor,
    ExposureField,
    FixtureGraph,
    FormatError,
    GridEnvironment,
    Heightmap,
    PlanResult,
    TraversabilityGraph,
    bench_environment,
    brute_force_min_exposure,
    corridor,
    gen_boxes,
    gen_hills,
    is_valid_path,
    lemma1_fixture,
    load_heightmap,
    obj_acc,
    obj_bin,
    optimality_gap,
    path_exposure_counts,
    plan,
    render_exposure,
    save_heightmap,
)
from . import _core

ALGORITHMS = ("shortest", "exposure_score", "binary", "saturation", "exact")


def plan_report(graph, field, algorithm, start, goal, **params):
    """Planner result plus objectives as a dict, matching the CLI `plan` record."""
    return json.loads(_core.plan_report(graph, field, algorithm, start, goal, **params))


def run_experiment(config_text, include_timing=True):
    """Runs a benchmark batch; returns (header, records) parsed from JSON lines."""
    lines = _core.run_experiment_jsonl(config_text, include_timing).splitlines()
    return json.loads(lines[0]), [json.loads(line) for line in lines[1:]]


__all__ = [name for name in dir() if not name.startswith("_")]
