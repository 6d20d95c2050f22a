"""CSV and JSON readers/writers for tables, weight heatmaps, traces and solutions.

Table units: SE bits/s/Hz, rate bits/s, RL and density percent, MUI nats, power W.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, fields
from pathlib import Path

import numpy as np

from ..metrics import MetricsRow, row_norms
from ..solver import DualState, IterationRecord, SolveTrace
from .sweep import SweepRow

TABLE_HEADER = [
    "rho_s",
    "avg_se_bpshz",
    "avg_rate_bps",
    "rl_pct",
    "mui_nats",
    "dens_pct",
    "power_w",
    "status",
    "seed",
]
_TABLE_FIELDS = ["rho_s", "avg_se", "avg_rate", "reliability_pct", "mui", "density_pct", "power_w"]
TRACE_HEADER = [f.name for f in fields(IterationRecord)]


def _g6(x):
    return f"{x:.6g}"


def _value_tag(x):
    return f"{x:g}"


def heatmap_name(rho_s, seed):
    return f"weights_rho_{_value_tag(rho_s)}_seed_{seed}.csv"


def trace_name(rho_s, seed):
    return f"trace_rho_{_value_tag(rho_s)}_seed_{seed}.csv"


def solution_name(rho_s, seed):
    return f"solution_rho_{_value_tag(rho_s)}_seed_{seed}.json"


def _open_for_write(path):
    path = Path(path)
    return path.open("w", newline="")


def export_table(result, path):
    """Write sweep rows (floats at 6 significant digits) as CSV."""
    rows = result.rows if hasattr(result, "rows") else list(result)
    if not rows:
        raise ValueError("nothing to export: empty sweep result")
    with _open_for_write(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TABLE_HEADER)
        for row in rows:
            m = row.metrics
            writer.writerow(
                [_g6(getattr(m, name)) for name in _TABLE_FIELDS] + [row.status, str(row.seed)]
            )
    return Path(path)


def read_table(path):
    rows = []
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != TABLE_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        for rec in reader:
            values = {
                name: float(rec[col]) for name, col in zip(_TABLE_FIELDS, TABLE_HEADER)
            }
            seed = rec["seed"]
            rows.append(SweepRow(MetricsRow(**values), rec["status"], seed if seed == "mean" else int(seed)))
    return rows


def export_heatmap(w, path):
    """Entrywise |W| (n_t rows x m user columns) plus each row's 2-norm."""
    w = np.asarray(w)
    mags = np.abs(w)
    norms = row_norms(w)
    with _open_for_write(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"user_{j}" for j in range(w.shape[1])] + ["row_norm"])
        for i in range(w.shape[0]):
            writer.writerow([repr(float(x)) for x in mags[i]] + [repr(float(norms[i]))])
    return Path(path)


def read_heatmap(path):
    """Returns (magnitudes, row_norms)."""
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        data = np.array([[float(x) for x in rec] for rec in reader], dtype=float)
    if not header or header[-1] != "row_norm":
        raise ValueError(f"{path}: not a heatmap file")
    data = data.reshape(-1, len(header))
    return data[:, :-1], data[:, -1]


def write_trace(trace, path):
    with _open_for_write(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for rec in trace.records:
            writer.writerow([repr(v) for v in asdict(rec).values()])
    return Path(path)


def read_trace(path, status=None):
    trace = SolveTrace()
    with Path(path).open(newline="") as fh:
        for rec in csv.DictReader(fh):
            values = {k: float(v) for k, v in rec.items()}
            values["iteration"] = int(values["iteration"])
            trace.records.append(IterationRecord(**values))
    if status is not None:
        trace.status = status
    return trace


def save_solution(path, w, duals, status, rho_s, seed, iterations):
    w = np.asarray(w, dtype=complex)
    doc = {
        "rho_s": float(rho_s),
        "seed": int(seed),
        "status": status,
        "iterations": int(iterations),
        "lambda": float(duals.lam),
        "mu": [float(x) for x in duals.mu],
        "w_real": w.real.tolist(),
        "w_imag": w.imag.tolist(),
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")
    return Path(path)


def load_solution(path):
    """Returns (w, DualState, metadata dict)."""
    doc = json.loads(Path(path).read_text())
    try:
        w = np.array(doc["w_real"], dtype=float) + 1j * np.array(doc["w_imag"], dtype=float)
        duals = DualState(float(doc["lambda"]), np.array(doc["mu"], dtype=float))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"{path}: malformed solution file ({exc})") from None
    meta = {k: doc[k] for k in ("rho_s", "seed", "status", "iterations") if k in doc}
    return w, duals, meta
