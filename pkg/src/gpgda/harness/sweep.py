"""Sparsity-weight sweeps over seeded channel realizations."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace

import numpy as np

from ..metrics import MetricsRow, summarize
from ..model import build_instance, generate_channel
from ..solver import CONVERGED, gpgda_solve

METRIC_FIELDS = [f.name for f in fields(MetricsRow)]


@dataclass(frozen=True)
class SweepRow:
    metrics: MetricsRow
    status: str
    seed: object  # int, or "mean" for seed-averaged rows

    @property
    def rho_s(self):
        return self.metrics.rho_s


@dataclass
class SweepResult:
    rows: list = field(default_factory=list)
    # (rho_s, seed) -> SolveResult, kept when the sweep is asked to
    solutions: dict = field(default_factory=dict)

    def averaged(self):
        return [r for r in self.rows if r.seed == "mean"]

    def per_seed(self, rho_s=None):
        return [r for r in self.rows if r.seed != "mean" and (rho_s is None or r.rho_s == rho_s)]


def make_instance(config, rho_s, seed):
    system = replace(config.system, rho_s=rho_s)
    channel = generate_channel(seed, system.n_t, system.m, config.channel_variance)
    return build_instance(system, config.scene, channel, config.reliability)


def solve_cell(config, rho_s, seed):
    """Build and solve one (rho_s, seed) instance; returns (instance, SolveResult)."""
    instance = make_instance(config, rho_s, seed)
    options = replace(config.solver, seed=seed)
    return instance, gpgda_solve(instance, options)


def _cell(args):
    config, rho_s, seed = args
    instance, result = solve_cell(config, rho_s, seed)
    metrics = summarize(instance, result.w, rho_s, aggregation=config.aggregation)
    return metrics, result


def average_rows(rows):
    """Seed-averaged row; fields are plain arithmetic means in the given order."""
    values = {
        name: float(np.mean([getattr(r.metrics, name) for r in rows])) for name in METRIC_FIELDS
    }
    values["rho_s"] = rows[0].rho_s
    statuses = {r.status for r in rows}
    status = statuses.pop() if len(statuses) == 1 else "mixed"
    return SweepRow(MetricsRow(**values), status, "mean")


def run_sweep(config, keep_solutions=False):
    """Solve every (rho_s, seed) cell; rows are ordered by rho_s then seed.

    Each rho_s block ends with its seed-averaged row. A cell that diverges keeps
    its row, flagged by its status.
    """
    seeds = sorted(config.seeds)
    cells = [(config, rho, seed) for rho in config.rho_s_grid for seed in seeds]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            outputs = list(pool.map(_cell, cells))
    else:
        outputs = [_cell(c) for c in cells]

    result = SweepResult()
    it = iter(zip(cells, outputs))
    for rho in config.rho_s_grid:
        block = []
        for _ in seeds:
            (_, _, seed), (metrics, solve) = next(it)
            block.append(SweepRow(metrics, solve.status, seed))
            if keep_solutions:
                result.solutions[(rho, seed)] = solve
        result.rows.extend(block)
        result.rows.append(average_rows(block))
    return result


def all_converged(result):
    return all(r.status == CONVERGED for r in result.per_seed())
