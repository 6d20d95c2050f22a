"""Command-line entry point: ``gpgda {solve,sweep,report,validate}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ..errors import ConfigError, DomainError, InvalidArgumentError, NumericError
from ..metrics import summarize
from . import io
from .config import ExperimentConfig, load_config, override
from .sweep import SweepRow, make_instance, run_sweep, solve_cell

log = logging.getLogger("gpgda")


def _build_parser():
    parser = argparse.ArgumentParser(prog="gpgda", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_config=False):
        p.add_argument("--config", required=need_config, help="TOML experiment config")
        p.add_argument("--seed", type=int, help="override channel/solver seed")
        p.add_argument("--out", help="override output directory")

    p = sub.add_parser("solve", help="solve one instance, write heatmap, trace and solution")
    common(p)
    p.add_argument("--rho-s", type=float, help="sparsity weight (default: first grid entry)")

    p = sub.add_parser("sweep", help="run the rho_s x seed sweep and write table.csv")
    common(p)
    p.add_argument("--traces", action="store_true", help="also write per-run trace CSVs")

    p = sub.add_parser("report", help="recompute metrics for a saved solution")
    common(p)
    p.add_argument("--weights", required=True, help="solution JSON written by 'solve'")

    p = sub.add_parser("validate", help="check a config and exit")
    common(p, need_config=True)
    return parser


def _config(args):
    config = load_config(args.config) if args.config else ExperimentConfig()
    return override(config, seed=args.seed, out=args.out)


def _solve(args):
    config = _config(args)
    rho = config.rho_s_grid[0] if args.rho_s is None else args.rho_s
    seed = config.seeds[0]
    instance, result = solve_cell(config, rho, seed)
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    io.export_heatmap(result.w, out / io.heatmap_name(rho, seed))
    io.write_trace(result.trace, out / io.trace_name(rho, seed))
    io.save_solution(
        out / io.solution_name(rho, seed), result.w, result.duals, result.status, rho, seed, len(result.trace)
    )
    row = SweepRow(summarize(instance, result.w, rho, aggregation=config.aggregation), result.status, seed)
    _print_rows([row], config.aggregation)
    return 0


def _sweep(args):
    config = _config(args)
    result = run_sweep(config, keep_solutions=True)
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    io.export_table(result, out / "table.csv")
    (out / "table.meta.json").write_text(
        json.dumps(
            {
                "avg_rate_aggregation": config.aggregation,
                "units": {
                    "avg_se_bpshz": "bits/s/Hz",
                    "avg_rate_bps": "bits/s",
                    "rl_pct": "percent",
                    "mui_nats": "nats",
                    "dens_pct": "percent",
                    "power_w": "W",
                },
            },
            indent=1,
            sort_keys=True,
        )
        + "\n"
    )
    for (rho, seed), solve in result.solutions.items():
        io.export_heatmap(solve.w, out / io.heatmap_name(rho, seed))
        if args.traces:
            io.write_trace(solve.trace, out / io.trace_name(rho, seed))
    _print_rows(result.averaged(), config.aggregation)
    return 0


def _report(args):
    config = _config(args)
    w, _, meta = io.load_solution(args.weights)
    rho = meta.get("rho_s", config.rho_s_grid[0])
    seed = args.seed if args.seed is not None else meta.get("seed", config.seeds[0])
    instance = make_instance(config, rho, seed)
    row = SweepRow(
        summarize(instance, w, rho, aggregation=config.aggregation), meta.get("status", "unknown"), seed
    )
    _print_rows([row], config.aggregation)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        io.export_table([row], out / "report.csv")
    return 0


def _validate(args):
    config = _config(args)
    print(
        f"ok: n_t={config.system.n_t} m={config.system.m} k={config.system.k} "
        f"grid={len(config.rho_s_grid)} seeds={len(config.seeds)}"
    )
    return 0


def _print_rows(rows, aggregation):
    print(f"# avg_rate_bps aggregated by {aggregation} over users")
    print(",".join(io.TABLE_HEADER))
    for row in rows:
        m = row.metrics
        vals = [m.rho_s, m.avg_se, m.avg_rate, m.reliability_pct, m.mui, m.density_pct, m.power_w]
        print(",".join(f"{v:.6g}" for v in vals) + f",{row.status},{row.seed}")


_COMMANDS = {"solve": _solve, "sweep": _sweep, "report": _report, "validate": _validate}


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors (2) and --help (0)
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, DomainError, InvalidArgumentError, NumericError, OSError, ValueError) as exc:
        print(f"gpgda {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
