"""Scan primal/dual step sizes on the default scenario.

Reports, per (step_primal, step_dual), the final density at the largest grid
weight, the status mix and the mean iteration count. This is how the solver
defaults were picked.
"""

import argparse
import itertools
from collections import Counter
from dataclasses import replace

import numpy as np

from gpgda.harness.config import ExperimentConfig
from gpgda.harness.sweep import solve_cell
from gpgda.metrics import row_density


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primal", type=float, nargs="+", default=[1e-2, 1e-1, 1.0, 2.0, 5.0])
    ap.add_argument("--dual", type=float, nargs="+", default=[1e-3, 1e-2])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--max-iters", type=int, default=10_000)
    ap.add_argument("--rho-s", type=float, help="default: largest grid entry")
    args = ap.parse_args()

    base = ExperimentConfig()
    rho = args.rho_s if args.rho_s is not None else base.rho_s_grid[-1]
    print(f"rho_s = {rho}, seeds 0..{args.seeds - 1}")
    print(f"{'primal':>8} {'dual':>8} {'dens %':>7} {'iters':>7}  statuses")
    for sp, sd in itertools.product(args.primal, args.dual):
        solver = replace(base.solver, step_primal=sp, step_dual=sd, max_iters=args.max_iters)
        cfg = replace(base, solver=solver)
        dens, iters, status = [], [], Counter()
        for seed in range(args.seeds):
            _, res = solve_cell(cfg, rho, seed)
            dens.append(row_density(res.w))
            iters.append(len(res.trace))
            status[res.status] += 1
        print(f"{sp:8.3g} {sd:8.3g} {np.mean(dens):7.1f} {np.mean(iters):7.0f}  {dict(status)}")


if __name__ == "__main__":
    main()
