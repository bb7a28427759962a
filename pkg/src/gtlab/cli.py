"""Command-line interface: gtlab {simulate, bounds, sweep}."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .algorithms import ALGORITHMS, run_algorithm, verify_zero_error
from .bounds import DEFAULT_THETA, compute_bounds
from .errors import ConfigError, ZeroErrorViolation
from .harness import SweepConfig, run_sweep, write_csv
from .oracle import OracleState
from .population import PriorSpec, generate_prior, sample_infections


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gtlab",
        description="Zero-error adaptive group testing simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one algorithm on one seeded trial")
    sim.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    sim.add_argument("--prior", required=True, metavar="SPEC",
                     help='e.g. "iid(p=0.1,size=20)" or '
                          '"dirichlet(size=1000,scale=3)"')
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--theta", type=float, default=DEFAULT_THETA)
    sim.add_argument("--verbose", action="store_true",
                     help="print the test-by-test trace")

    bnd = sub.add_parser("bounds", help="print closed-form bounds for a prior")
    bnd.add_argument("--prior", required=True, metavar="SPEC")
    bnd.add_argument("--seed", type=int, default=0)
    bnd.add_argument("--theta", type=float, default=DEFAULT_THETA)
    bnd.add_argument("--csv", action="store_true", help="also print a CSV row")

    swp = sub.add_parser("sweep", help="run a Monte Carlo sweep from a config file")
    swp.add_argument("--config", required=True, metavar="FILE")
    swp.add_argument("--output", help="override the config's output path")
    return parser


def _cmd_simulate(args) -> int:
    spec = PriorSpec.parse(args.prior, seed=args.seed)
    rng = np.random.default_rng(np.random.SeedSequence(args.seed))
    prior = generate_prior(spec, rng)
    truth = sample_infections(prior, rng)
    oracle = OracleState(truth, record_log=args.verbose)
    record = run_algorithm(args.algorithm, prior, oracle, args.theta)
    if args.verbose:
        print(oracle.dump_log())
    ok = verify_zero_error(record, truth)
    print(f"algorithm={record.algorithm} population={len(prior)} "
          f"mu={prior.mu:.6g} entropy_bits={prior.entropy_bits:.6g}")
    print(f"tests={record.total_tests} negative_root_tests="
          f"{record.negative_root_tests} defectives={int(record.recovered.sum())} "
          f"zero_error={'ok' if ok else 'FAILED'}")
    return 0 if ok else 1


def _cmd_bounds(args) -> int:
    spec = PriorSpec.parse(args.prior, seed=args.seed)
    prior = generate_prior(spec)
    b = compute_bounds(prior, args.theta)
    table = [
        ("entropy_lb", b.entropy_lb),
        ("ours_inid", b.ours_inid),
        ("ours_iid", b.ours_iid),
        ("li", b.li),
        ("kealy", b.kealy),
        ("partitions_max", b.partitions_max),
    ]
    if b.clean_groups_iid is not None:
        table.append(("clean_groups_iid", b.clean_groups_iid))
    for name, value in table:
        print(f"{name:18s} {value:.6f}")
    if args.csv:
        print(",".join(name for name, _ in table))
        print(",".join(repr(float(v)) for _, v in table))
    return 0


def _cmd_sweep(args) -> int:
    config = SweepConfig.from_json(args.config)
    rows = run_sweep(config)
    out = args.output or config.output or "sweep.csv"
    write_csv(rows, out)
    print(f"wrote {len(rows)} points x {len(config.algorithms)} algorithms "
          f"({config.trials} trials each) to {out}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "bounds":
            return _cmd_bounds(args)
        return _cmd_sweep(args)
    except ConfigError as exc:
        print(f"gtlab: config error: {exc}", file=sys.stderr)
        return 2
    except ZeroErrorViolation as exc:
        print(f"gtlab: zero-error violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
