#!/usr/bin/env python3
"""Five-strategy comparison: 500 items, truncated-exponential priors with
the mean swept over [0.0025, 0.025], all strategies paired per trial.

Writes the sweep CSV and prints per-point means for every strategy.
"""

import argparse
import sys
import time

sys.path.insert(0, "src")

from gtlab.algorithms import ALGORITHMS
from gtlab.harness import experiment2_config, run_sweep, write_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=500,
                        help="trials per grid point (paper fidelity: 10000)")
    parser.add_argument("--seed", type=int, default=2)
    parser.add_argument("--output", default="experiment2.csv")
    args = parser.parse_args()

    config = experiment2_config(trials=args.trials, master_seed=args.seed,
                                output=args.output)
    start = time.perf_counter()
    rows = run_sweep(config)
    write_csv(rows, args.output)
    print(f"{len(rows)} points x {args.trials} trials x {len(ALGORITHMS)} "
          f"strategies in {time.perf_counter() - start:.0f}s -> {args.output}")
    header = f"{'1/rate':>8} {'mu':>7}" + "".join(f"{n:>13}" for n in ALGORITHMS)
    print(header)
    for row, param in zip(rows, config.grid):
        cells = "".join(f"{row.stats[n].mean_tests:13.2f}" for n in ALGORITHMS)
        print(f"{param:8.4f} {row.mu:7.2f}{cells}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
