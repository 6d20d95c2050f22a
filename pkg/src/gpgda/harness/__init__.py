"""Experiment orchestration: config ingestion, sweeps, file output and the CLI."""

from .config import ExperimentConfig, load_config, parse_config
from .io import export_heatmap, export_table, read_heatmap, read_table
from .sweep import SweepResult, SweepRow, run_sweep
