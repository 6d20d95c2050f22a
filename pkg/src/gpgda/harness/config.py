"""TOML experiment configuration.

Every table and key is optional; see ``configs/default_sweep.toml`` for an annotated
file listing the full schema. Unknown keys are rejected.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..errors import ConfigError, DomainError, InvalidArgumentError
from ..model import (
    RadarScene,
    ReliabilityVector,
    SystemConfig,
    default_reliability,
    load_reliability,
)
from ..solver import SolverOptions

DEFAULT_RHO_S_GRID = (0.0, 0.0008, 0.0015, 0.0023, 0.0031, 0.0038, 0.0061, 0.0767)
DEFAULT_SEEDS = (0, 1, 2, 3, 4)
AGGREGATIONS = ("mean", "sum")

_NUM = (int, float)
_SYSTEM_KEYS = {
    "n_t": int,
    "n_r": int,
    "m": int,
    "sigma_r2": _NUM,
    "sigma_c2": _NUM,
    "rho_r": _NUM,
    "eta_pa": _NUM,
    "p_a": _NUM,
    "p_tot": _NUM,
    "r_min": list,
    "bandwidths": list,
    "spacing_ratio": _NUM,
}
_SCENE_KEYS = {"angles": list, "powers": list}
_CHANNEL_KEYS = {"variance": _NUM}
_RELIABILITY_KEYS = {
    "values": list,
    "file": str,
    "seed": int,
    "n_healthy": int,
    "low": _NUM,
    "high": _NUM,
}
_SWEEP_KEYS = {"rho_s_grid": list, "seeds": list, "aggregation": str, "workers": int}
_SOLVER_KEYS = {
    "step_primal": _NUM,
    "step_dual": _NUM,
    "max_iters": int,
    "tol_primal": _NUM,
    "tol_constraint": _NUM,
    "init_scheme": str,
    "seed": int,
    "init_power_fraction": _NUM,
    "backtracking": bool,
}
_OUTPUT_KEYS = {"dir": str}
_SECTIONS = {
    "system": _SYSTEM_KEYS,
    "scene": _SCENE_KEYS,
    "channel": _CHANNEL_KEYS,
    "reliability": _RELIABILITY_KEYS,
    "sweep": _SWEEP_KEYS,
    "solver": _SOLVER_KEYS,
    "output": _OUTPUT_KEYS,
}


@dataclass(frozen=True)
class ExperimentConfig:
    system: SystemConfig = field(default_factory=SystemConfig)
    scene: RadarScene = field(default_factory=RadarScene)
    reliability: ReliabilityVector = field(default_factory=default_reliability)
    rho_s_grid: tuple = DEFAULT_RHO_S_GRID
    seeds: tuple = DEFAULT_SEEDS
    solver: SolverOptions = field(default_factory=SolverOptions)
    output_dir: Path = Path("results")
    aggregation: str = "mean"
    channel_variance: float = 1.0
    workers: int = 1

    def __post_init__(self):
        check_grid(self.rho_s_grid)
        if not self.seeds:
            raise ConfigError("sweep.seeds: must be nonempty", key="seeds")
        if self.aggregation not in AGGREGATIONS:
            raise ConfigError(
                f"sweep.aggregation: expected one of {AGGREGATIONS}, got {self.aggregation!r}",
                key="aggregation",
            )
        if len(self.reliability) != self.system.n_t:
            raise ConfigError(
                f"reliability: {len(self.reliability)} entries for n_t = {self.system.n_t}",
                key="reliability",
            )
        if self.scene.k != self.system.k:
            raise ConfigError("scene: target count disagrees with system.k", key="scene")


def check_grid(grid):
    if not grid:
        raise ConfigError("sweep.rho_s_grid: must be nonempty", key="rho_s_grid")
    for i, v in enumerate(grid):
        if not (math.isfinite(v) and v >= 0):
            raise ConfigError(f"sweep.rho_s_grid[{i}]: must be finite and >= 0, got {v}", key="rho_s_grid")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("sweep.rho_s_grid: must be strictly ascending", key="rho_s_grid")


def _type_name(t):
    if isinstance(t, tuple):
        return "number"
    return {int: "integer", list: "array", str: "string", bool: "boolean"}[t]


def _check_table(name, table, schema):
    if not isinstance(table, dict):
        raise ConfigError(f"[{name}]: expected a table, got {type(table).__name__}", key=name)
    for key, value in table.items():
        where = f"{name}.{key}"
        if key not in schema:
            raise ConfigError(f"{where}: unknown key", key=where)
        expected = schema[key]
        # bool is an int subclass; only accept it where a boolean is asked for
        ok = isinstance(value, expected) and (expected is bool or not isinstance(value, bool))
        if not ok:
            raise ConfigError(
                f"{where}: expected {_type_name(expected)}, got {type(value).__name__} {value!r}",
                key=where,
            )


def _numbers(where, values):
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, _NUM):
            raise ConfigError(f"{where}[{i}]: expected number, got {v!r}", key=where)
    return tuple(float(v) for v in values)


def _reliability(table, n_t, base_dir):
    sources = [k for k in ("values", "file") if k in table]
    if len(sources) > 1:
        raise ConfigError("reliability: give either 'values' or 'file', not both", key="reliability")
    if "values" in table:
        try:
            return load_reliability(list(_numbers("reliability.values", table["values"])))
        except DomainError as exc:
            raise DomainError(f"reliability.values: {exc}", index=exc.index) from None
    if "file" in table:
        path = Path(table["file"])
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"reliability.file: cannot read {path}: {exc}", key="reliability.file") from None
        try:
            return load_reliability(text)
        except DomainError as exc:
            raise DomainError(f"reliability.file {path}: {exc}", index=exc.index) from None
    return default_reliability(
        n_t,
        n_healthy=table.get("n_healthy", min(4, n_t)),
        seed=table.get("seed", 0),
        low=table.get("low", 0.2),
        high=table.get("high", 0.9),
    )


def parse_config(source, base_dir=None):
    """Parse and validate TOML text into an ExperimentConfig.

    Relative reliability file paths are resolved against ``base_dir``.
    """
    try:
        doc = tomllib.loads(source)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    for name, table in doc.items():
        if name not in _SECTIONS:
            raise ConfigError(f"[{name}]: unknown table", key=name)
        _check_table(name, table, _SECTIONS[name])

    system_t = dict(doc.get("system", {}))
    scene_t = doc.get("scene", {})
    for key in ("r_min", "bandwidths"):
        if key in system_t:
            system_t[key] = _numbers(f"system.{key}", system_t[key])
    try:
        if scene_t:
            scene = RadarScene(
                _numbers("scene.angles", scene_t.get("angles", [])),
                _numbers("scene.powers", scene_t.get("powers", [])),
            )
        else:
            scene = RadarScene()
        m = system_t.get("m", SystemConfig.m)
        if m != SystemConfig.m and "r_min" not in system_t:
            raise ConfigError("system.r_min: required when m differs from the default", key="system.r_min")
        if m != SystemConfig.m and "bandwidths" not in system_t:
            raise ConfigError(
                "system.bandwidths: required when m differs from the default", key="system.bandwidths"
            )
        system = SystemConfig(k=scene.k, **system_t)
    except (InvalidArgumentError, DomainError) as exc:
        raise type(exc)(f"[system]/[scene]: {exc}") from None

    reliability = _reliability(doc.get("reliability", {}), system.n_t, base_dir)

    sweep_t = doc.get("sweep", {})
    grid = _numbers("sweep.rho_s_grid", sweep_t.get("rho_s_grid", DEFAULT_RHO_S_GRID))
    seeds = sweep_t.get("seeds", list(DEFAULT_SEEDS))
    for i, s in enumerate(seeds):
        if isinstance(s, bool) or not isinstance(s, int):
            raise ConfigError(f"sweep.seeds[{i}]: expected integer, got {s!r}", key="sweep.seeds")
    if len(set(seeds)) != len(seeds):
        raise ConfigError("sweep.seeds: duplicate seed", key="sweep.seeds")
    workers = sweep_t.get("workers", 1)
    if workers < 1:
        raise ConfigError("sweep.workers: must be >= 1", key="sweep.workers")

    try:
        solver = SolverOptions(**doc.get("solver", {}))
    except InvalidArgumentError as exc:
        raise ConfigError(f"[solver]: {exc}", key="solver") from None

    variance = doc.get("channel", {}).get("variance", 1.0)
    if not variance > 0:
        raise ConfigError("channel.variance: must be > 0", key="channel.variance")

    return ExperimentConfig(
        system=system,
        scene=scene,
        reliability=reliability,
        rho_s_grid=grid,
        seeds=tuple(sorted(seeds)),
        solver=solver,
        output_dir=Path(doc.get("output", {}).get("dir", "results")),
        aggregation=sweep_t.get("aggregation", "mean"),
        channel_variance=float(variance),
        workers=workers,
    )


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}", key=str(path)) from None
    return parse_config(text, base_dir=path.parent)


def override(config, seed=None, out=None):
    """Apply CLI overrides: a single seed and/or an output directory."""
    changes = {}
    if seed is not None:
        changes["seeds"] = (seed,)
        changes["solver"] = replace(config.solver, seed=seed)
    if out is not None:
        changes["output_dir"] = Path(out)
    return replace(config, **changes) if changes else config
