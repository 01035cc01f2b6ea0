"""Experiment presets and batch execution with CSV emission.

A preset is a named bundle of config overrides plus an optional parameter
sweep (one batch per cell) and the set of output files it writes:

============ ===========================================================
agents.csv   one row per (condition, run, step, agent); only written by
             single-reliability presets because the schema carries no
             p_obj column
runs.csv     per-run per-step population statistics
summary.csv  cross-run grand means and between-run variance
scores.csv   per-cell accuracy (mean Brier / absolute error over runs,
             steps, and agents) for the isolated-agent accuracy surfaces
============ ===========================================================

Every output directory also gets a ``metadata.json`` with the resolved
base configuration (round-trips through ``parse_config``), the sweep
cells, tool version, and wall clock.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence

from ._version import __version__
from .config import config_to_dict, merge_config_dicts, parse_config
from .csvio import (
    AGENTS_HEADER,
    RUNS_HEADER,
    SCORES_HEADER,
    SUMMARY_HEADER,
    emit_csv,
    format_row,
)
from .engine import SimConfig, run_batch, run_graph
from .errors import ConfigError
from .metrics import BatchAggregator
from .topology import format_edge_list

OUT_AGENTS = "agents"
OUT_RUNS = "runs"
OUT_SUMMARY = "summary"
OUT_SCORES = "scores"

_DECILE_GRID = tuple(round(0.1 * i, 1) for i in range(1, 10))


@dataclass(frozen=True)
class ExperimentPreset:
    """Named parameterization: overrides, sweep cells, and output files."""

    name: str
    description: str
    overrides: Mapping[str, Any]
    sweep: tuple[Mapping[str, Any], ...]
    outputs: tuple[str, ...]


_ISOLATED_BASE: Mapping[str, Any] = {
    "n_agents": 1,
    "steps": 10,
    "inquiry_prob": 1.0,
    "runs": 1000,
    "truth_mode": "sampled",
    "conditions": ["ShadowUpdater", "ShadowFixed", "Optimal"],
}

_ISOLATED_SWEEP = tuple(
    {"p_obj": p, "base_rate": b} for p in _DECILE_GRID for b in _DECILE_GRID
)

PRESETS: dict[str, ExperimentPreset] = {
    "fig1-isolated": ExperimentPreset(
        name="fig1-isolated",
        description="Isolated agents, ten data items per run, accuracy surface over reliability and base rate",
        overrides=_ISOLATED_BASE,
        sweep=_ISOLATED_SWEEP,
        outputs=(OUT_SCORES,),
    ),
    "fig2-prior-knowledge": ExperimentPreset(
        name="fig2-prior-knowledge",
        description="Isolated agents whose prior belief equals the base rate",
        overrides={**_ISOLATED_BASE, "prior_belief": "base-rate"},
        sweep=_ISOLATED_SWEEP,
        outputs=(OUT_SCORES,),
    ),
    "fig3-pair-trace": ExperimentPreset(
        name="fig3-pair-trace",
        description="Single run, agent-level belief traces",
        overrides={"p_obj": 0.66, "runs": 1},
        sweep=(),
        outputs=(OUT_AGENTS, OUT_RUNS, OUT_SUMMARY),
    ),
    "fig4-run-panels": ExperimentPreset(
        name="fig4-run-panels",
        description="Three example runs with agent traces plus mean/variance overlays",
        overrides={"p_obj": 0.66, "runs": 3},
        sweep=(),
        outputs=(OUT_AGENTS, OUT_RUNS, OUT_SUMMARY),
    ),
    "fig5-run-means": ExperimentPreset(
        name="fig5-run-means",
        description="Hundred-run batch: per-run mean fans with the grand mean",
        overrides={"p_obj": 0.66, "runs": 100},
        sweep=(),
        outputs=(OUT_AGENTS, OUT_RUNS, OUT_SUMMARY),
    ),
    "fig6-grand-means": ExperimentPreset(
        name="fig6-grand-means",
        description="Grand-mean comparison across four reliability levels",
        overrides={"runs": 100},
        sweep=({"p_obj": 0.33}, {"p_obj": 0.66}, {"p_obj": 0.8}, {"p_obj": 0.9}),
        outputs=(OUT_RUNS, OUT_SUMMARY),
    ),
}


def preset_cells(
    preset: ExperimentPreset,
    config_layer: Optional[Mapping[str, Any]] = None,
    cli_overrides: Optional[Mapping[str, Any]] = None,
) -> list[SimConfig]:
    """Resolve a preset into validated per-cell configs.

    Precedence: preset overrides < config file < CLI flags. A user
    override of a swept key collapses that sweep dimension.
    """
    config_layer = dict(config_layer or {})
    cli_overrides = dict(cli_overrides or {})
    base = merge_config_dicts(preset.overrides, config_layer, cli_overrides)
    user_keys = set(config_layer) | set(cli_overrides)
    if not preset.sweep:
        return [parse_config(base)]
    cell_dicts: list[dict[str, Any]] = []
    for cell in preset.sweep:
        reduced = {k: v for k, v in cell.items() if k not in user_keys}
        merged = merge_config_dicts(base, reduced)
        if merged not in cell_dicts:
            cell_dicts.append(merged)
    return [parse_config(d) for d in cell_dicts]


def _cell_sort_key(config: SimConfig) -> tuple[float, float]:
    return (config.p_obj, config.base_rate)


def execute_cells(
    cells: Sequence[SimConfig],
    outputs: Sequence[str],
    out_dir: Path,
    *,
    n_jobs: int = 1,
    dump_graphs: bool = False,
    preset_name: Optional[str] = None,
) -> list[Path]:
    """Run every cell's batch and write the requested CSVs plus metadata.

    Rows are emitted sorted: agents by (condition, run, step, agent),
    runs by (condition, p_obj, run, step), summary by (condition, p_obj,
    step), scores by (condition, p_obj, base_rate). On any failure the
    partial outputs of this invocation are removed.
    """
    if not cells:
        raise ConfigError("nothing to run: no cells resolved")
    seeds = {c.master_seed for c in cells}
    if len(seeds) != 1:
        raise ConfigError("all cells of one invocation must share master_seed")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = tuple(outputs)
    cells = sorted(cells, key=_cell_sort_key)

    started = time.time()
    written: list[Path] = []
    part_files: dict[str, Path] = {}
    part_handles: dict[str, Any] = {}
    runs_rows: dict[str, list[tuple]] = {}
    summary_rows: dict[str, list[tuple]] = {}
    scores_rows: dict[str, list[tuple]] = {}
    graphs_dir = out_dir / "graphs"

    def agents_handle(condition: str):
        handle = part_handles.get(condition)
        if handle is None:
            part = out_dir / f".agents_{condition}.part"
            handle = open(part, "w", encoding="utf-8", newline="\n")
            part_files[condition] = part
            part_handles[condition] = handle
        return handle

    try:
        for cell_index, cell in enumerate(cells):
            agg = BatchAggregator() if OUT_SUMMARY in outputs else None
            score_acc: dict[str, list[float]] = {}
            for run_index, trajectories in run_batch(cell, n_jobs=n_jobs):
                if dump_graphs and cell_index == 0:
                    graphs_dir.mkdir(exist_ok=True)
                    graph_path = graphs_dir / f"run_{run_index:05d}.txt"
                    graph_path.write_text(format_edge_list(run_graph(cell, run_index)), encoding="utf-8")
                    written.append(graph_path)
                for condition, traj in trajectories.items():
                    steps, n = traj.beliefs.shape
                    if OUT_AGENTS in outputs:
                        handle = agents_handle(condition)
                        beliefs, trust = traj.beliefs, traj.world_trust
                        for t in range(steps):
                            b_row, w_row = beliefs[t], trust[t]
                            handle.writelines(
                                format_row((condition, run_index, t, a, b_row[a], w_row[a]))
                                for a in range(n)
                            )
                    if OUT_RUNS in outputs:
                        rows = runs_rows.setdefault(condition, [])
                        means = traj.beliefs.mean(axis=1)
                        variances = traj.beliefs.var(axis=1)
                        trust_means = traj.world_trust.mean(axis=1)
                        for t in range(steps):
                            rows.append(
                                (condition, cell.p_obj, run_index, t,
                                 float(means[t]), float(variances[t]), float(trust_means[t]))
                            )
                    if agg is not None:
                        agg.add(traj)
                    if OUT_SCORES in outputs and steps > 0:
                        # accuracy over the whole trajectory: runs x steps x agents
                        target = 1.0 if traj.truth else 0.0
                        acc = score_acc.setdefault(condition, [0.0, 0.0, 0])
                        diff = traj.beliefs - target
                        acc[0] += float((diff * diff).sum())
                        acc[1] += float(np.abs(diff).sum())
                        acc[2] += steps * n
            if agg is not None:
                for condition, series in agg.result().items():
                    rows = summary_rows.setdefault(condition, [])
                    for t in range(series.grand_mean.shape[0]):
                        rows.append(
                            (condition, cell.p_obj, t,
                             float(series.grand_mean[t]), float(series.between_run_variance[t]))
                        )
            for condition, (sq, ab, count) in score_acc.items():
                scores_rows.setdefault(condition, []).append(
                    (condition, cell.p_obj, cell.base_rate, sq / count, ab / count)
                )

        for handle in part_handles.values():
            handle.close()
        part_handles.clear()

        if OUT_AGENTS in outputs:
            path = out_dir / "agents.csv"
            tmp = path.with_name(path.name + ".tmp")
            with open(tmp, "w", encoding="utf-8", newline="\n") as out:
                out.write(",".join(AGENTS_HEADER) + "\n")
                for condition in sorted(part_files):
                    with open(part_files[condition], "r", encoding="utf-8") as part:
                        for chunk in iter(lambda p=part: p.read(1 << 20), ""):
                            out.write(chunk)
            tmp.replace(path)
            written.append(path)
        if OUT_RUNS in outputs:
            rows = [r for c in sorted(runs_rows) for r in runs_rows[c]]
            written.append(emit_csv(rows, out_dir / "runs.csv", RUNS_HEADER))
        if OUT_SUMMARY in outputs:
            rows = [r for c in sorted(summary_rows) for r in summary_rows[c]]
            written.append(emit_csv(rows, out_dir / "summary.csv", SUMMARY_HEADER))
        if OUT_SCORES in outputs:
            rows = [r for c in sorted(scores_rows) for r in scores_rows[c]]
            written.append(emit_csv(rows, out_dir / "scores.csv", SCORES_HEADER))

        metadata = {
            "schema": 1,
            "generator": "epitrust",
            "version": __version__,
            "preset": preset_name,
            "master_seed": cells[0].master_seed,
            "config": config_to_dict(cells[0]),
            "cells": [{"p_obj": c.p_obj, "base_rate": c.base_rate} for c in cells],
            "outputs": sorted(set(outputs)),
            "wall_clock_seconds": time.time() - started,
            "created_utc": datetime.now(timezone.utc).isoformat(),
        }
        meta_path = out_dir / "metadata.json"
        meta_path.write_text(json.dumps(metadata, indent=2) + "\n", encoding="utf-8")
        written.append(meta_path)
        return written
    except BaseException:
        for handle in part_handles.values():
            handle.close()
        for path in written:
            Path(path).unlink(missing_ok=True)
        raise
    finally:
        for part in part_files.values():
            part.unlink(missing_ok=True)


def run_preset(
    name: str,
    out_dir: Path,
    *,
    master_seed: Optional[int] = None,
    config_layer: Optional[Mapping[str, Any]] = None,
    cli_overrides: Optional[Mapping[str, Any]] = None,
    n_jobs: int = 1,
    dump_graphs: bool = False,
) -> list[Path]:
    """Execute a named preset end to end."""
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; valid: {', '.join(sorted(PRESETS))}")
    preset = PRESETS[name]
    cli = dict(cli_overrides or {})
    if master_seed is not None:
        cli["master_seed"] = master_seed
    cells = preset_cells(preset, config_layer, cli)
    return execute_cells(
        cells,
        preset.outputs,
        Path(out_dir),
        n_jobs=n_jobs,
        dump_graphs=dump_graphs,
        preset_name=name,
    )
