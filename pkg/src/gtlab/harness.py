"""Seeded Monte Carlo sweeps over prior-parameter grids.

Each grid point runs ``trials`` independent trials.  Trial t at point k
derives its own generator from SeedSequence(master_seed, spawn_key=(k, t)),
so any trial replays identically regardless of trial count or execution
order.  Within a trial every requested algorithm sees the same freshly
drawn (prior, truth) pair, making the comparison paired.  Aggregation
reduces in trial-index order, so serial and parallel execution produce
identical statistics and byte-identical CSV output.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .algorithms import ALGORITHMS, run_algorithm, verify_zero_error
from .bounds import DEFAULT_THETA, BoundSet, bound_formulas
from .errors import ConfigError, ZeroErrorViolation
from .oracle import OracleState
from .population import PriorSpec, generate_prior, sample_infections

CSV_COLUMNS = ("point", "mu", "entropy", "algorithm", "mean_tests",
               "std_tests", "ci95", "bound_ours", "bound_ours_iid",
               "bound_li", "bound_kealy", "entropy_lb")

# Normal-approximation confidence intervals are only reported when the
# trial count supports them.
_MIN_TRIALS_FOR_CI = 100
_Z95 = 1.96


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: a prior family, a parameter grid, and algorithms to pair.

    Grid values parameterize the family: the probability itself for
    ``iid``, the scale factor for ``dirichlet`` (expected defectives track
    the scale), and the mean (inverse rate) for ``truncated_exponential``.
    """

    population_size: int
    prior_family: str
    grid: tuple[float, ...]
    trials: int
    algorithms: tuple[str, ...]
    master_seed: int = 0
    theta: float = DEFAULT_THETA
    output: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "grid", tuple(float(g) for g in self.grid))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if self.population_size < 1:
            raise ConfigError("population_size must be >= 1")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.grid:
            raise ConfigError("grid must be nonempty")
        if not self.algorithms:
            raise ConfigError("algorithms must be nonempty")
        for name in self.algorithms:
            if name not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {name!r}")
        if self.prior_family not in ("iid", "dirichlet", "truncated_exponential"):
            raise ConfigError(f"unknown prior family {self.prior_family!r}")
        if not 0.0 < self.theta < 0.5:
            raise ConfigError(f"theta must lie in (0, 0.5), got {self.theta}")

    def prior_spec(self, param: float) -> PriorSpec:
        if self.prior_family == "iid":
            return PriorSpec("iid", self.population_size, p=param)
        if self.prior_family == "dirichlet":
            return PriorSpec("dirichlet", self.population_size, scale=param)
        return PriorSpec("truncated_exponential", self.population_size,
                         rate=1.0 / param)

    @classmethod
    def from_json(cls, path: str | Path) -> "SweepConfig":
        with open(path, encoding="utf-8") as f:
            raw = json.load(f)
        known = {f: raw[f] for f in cls.__dataclass_fields__ if f in raw}
        extra = set(raw) - set(known)
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        try:
            return cls(**known)
        except TypeError as exc:
            raise ConfigError(f"incomplete sweep config: {exc}") from exc


@dataclass(frozen=True)
class AlgorithmStats:
    mean_tests: float
    std_tests: float
    ci95: float
    mean_negative_roots: float
    max_negative_roots: int


@dataclass(frozen=True)
class SweepRow:
    """Per-point aggregate: trial-mean mu and entropy, per-algorithm
    statistics in config order, and bounds evaluated at the means."""

    point: int
    mu: float
    entropy: float
    stats: dict[str, AlgorithmStats]
    bounds: BoundSet


def run_sweep(config: SweepConfig, threads: int | None = None) -> list[SweepRow]:
    """Run the full grid; deterministic for a fixed config.

    ``threads`` (or the GTLAB_THREADS environment variable) enables
    process-parallel trial execution; results are identical either way.
    A recovered-vs-truth mismatch aborts the sweep with the offending
    (seed, point, trial).
    """
    if threads is None:
        threads = int(os.environ.get("GTLAB_THREADS", "1"))
    rows = []
    for point, param in enumerate(config.grid):
        outcomes = _point_outcomes(config, point, param, threads)
        rows.append(_aggregate(config, point, outcomes))
    return rows


def _point_outcomes(config: SweepConfig, point: int, param: float,
                    threads: int) -> list[tuple]:
    if threads <= 1 or config.trials < 2 * threads:
        return _trial_block(config, point, param, 0, config.trials)
    chunk = math.ceil(config.trials / (threads * 4))
    spans = [(lo, min(lo + chunk, config.trials))
             for lo in range(0, config.trials, chunk)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_trial_block, config, point, param, lo, hi)
                   for lo, hi in spans]
        outcomes: list[tuple] = []
        for future in futures:  # submission order == trial-index order
            outcomes.extend(future.result())
    return outcomes


def _trial_block(config: SweepConfig, point: int, param: float,
                 lo: int, hi: int) -> list[tuple]:
    spec = config.prior_spec(param)
    out = []
    for trial in range(lo, hi):
        rng = np.random.default_rng(
            np.random.SeedSequence(config.master_seed, spawn_key=(point, trial)))
        prior = generate_prior(spec, rng)
        truth = sample_infections(prior, rng)
        per_alg = {}
        for name in config.algorithms:
            oracle = OracleState(truth)
            record = run_algorithm(name, prior, oracle, config.theta)
            if not verify_zero_error(record, truth):
                raise ZeroErrorViolation(
                    f"algorithm {name!r} misclassified at point {point}, "
                    f"trial {trial} (master_seed={config.master_seed})",
                    point=point, trial=trial,
                    seed=(config.master_seed, point, trial))
            per_alg[name] = (record.total_tests, record.negative_root_tests)
        out.append((prior.mu, prior.entropy_bits, per_alg))
    return out


def _aggregate(config: SweepConfig, point: int, outcomes: list[tuple]) -> SweepRow:
    trials = len(outcomes)
    mu = float(np.mean([o[0] for o in outcomes]))
    entropy = float(np.mean([o[1] for o in outcomes]))
    stats: dict[str, AlgorithmStats] = {}
    for name in config.algorithms:
        tests = np.array([o[2][name][0] for o in outcomes], dtype=np.float64)
        negs = np.array([o[2][name][1] for o in outcomes], dtype=np.float64)
        std = float(np.std(tests, ddof=1)) if trials >= 2 else float("nan")
        ci = (_Z95 * std / math.sqrt(trials)
              if trials >= _MIN_TRIALS_FOR_CI else float("nan"))
        stats[name] = AlgorithmStats(
            mean_tests=float(np.mean(tests)),
            std_tests=std,
            ci95=ci,
            mean_negative_roots=float(np.mean(negs)),
            max_negative_roots=int(negs.max()),
        )
    return SweepRow(point=point, mu=mu, entropy=entropy, stats=stats,
                    bounds=bound_formulas(entropy, mu, config.theta))


def _fmt(x: float) -> str:
    return repr(float(x))


def write_csv(rows: list[SweepRow], path: str | Path) -> None:
    """Header plus one row per (point, algorithm); UTF-8, '.' decimals."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(",".join(CSV_COLUMNS) + "\n")
        for row in rows:
            b = row.bounds
            for name, stat in row.stats.items():
                f.write(",".join((
                    str(row.point), _fmt(row.mu), _fmt(row.entropy), name,
                    _fmt(stat.mean_tests), _fmt(stat.std_tests), _fmt(stat.ci95),
                    _fmt(b.ours_inid), _fmt(b.ours_iid), _fmt(b.li),
                    _fmt(b.kealy), _fmt(b.entropy_lb))) + "\n")


def read_csv(path: str | Path) -> list[dict]:
    """Parse a sweep CSV back into one dict per data row."""
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n").split(",")
        if tuple(header) != CSV_COLUMNS:
            raise ConfigError(f"unexpected CSV columns: {header}")
        out = []
        for line in f:
            parts = line.rstrip("\n").split(",")
            rec: dict = dict(zip(CSV_COLUMNS, parts))
            for key in CSV_COLUMNS:
                if key == "algorithm":
                    continue
                rec[key] = int(rec[key]) if key == "point" else float(rec[key])
            out.append(rec)
    return out


def experiment1_config(trials: int = 500, master_seed: int = 1,
                       output: str | None = None) -> SweepConfig:
    """Scaled-entropy sweep: 1000 items, scaled flat-Dirichlet priors with
    expected defectives swept 1 through 25, refined code-tree strategy."""
    return SweepConfig(
        population_size=1000,
        prior_family="dirichlet",
        grid=tuple(np.linspace(1.0, 25.0, 25)),
        trials=trials,
        algorithms=("sfh",),
        master_seed=master_seed,
        output=output,
    )


def experiment2_config(trials: int = 500, master_seed: int = 2,
                       output: str | None = None) -> SweepConfig:
    """Five-strategy comparison: 500 items, truncated-exponential priors
    with mean swept over [0.0025, 0.025]."""
    return SweepConfig(
        population_size=500,
        prior_family="truncated_exponential",
        grid=tuple(np.linspace(0.0025, 0.025, 25)),
        trials=trials,
        algorithms=ALGORITHMS,
        master_seed=master_seed,
        output=output,
    )
