"""Closed-form bounds on expected test counts.

All quantities are plain 64-bit float formulas in the population entropy
H (bits) and expected defective count mu; bound curves tolerate 1e-9
relative error at these magnitudes, so no extended precision is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError
from .oracle import LOG_HALF
from .population import PriorVector

DEFAULT_THETA = 1e-5


@dataclass(frozen=True)
class BoundSet:
    """Bound values for one population.

    ``ours_inid`` / ``ours_iid`` bound the refined strategies implemented
    here (general and identical-prior forms); ``li`` and ``kealy`` restate
    the comparison baselines' published bounds; ``partitions_max`` caps
    disjoint saturated partitions; ``clean_groups_iid`` caps the expected
    number of defect-free groups and only applies to identical priors.
    """

    entropy_lb: float
    ours_inid: float
    ours_iid: float
    li: float
    kealy: float
    partitions_max: float
    clean_groups_iid: float | None = None


def bound_formulas(entropy_bits: float, mu: float,
                   theta: float = DEFAULT_THETA) -> BoundSet:
    """Evaluate every closed-form bound at the given (H, mu) point."""
    if not 0.0 < theta < 0.5:
        raise ConfigError(f"theta must lie in (0, 0.5), got {theta}")
    h = float(entropy_bits)
    mu = float(mu)
    return BoundSet(
        entropy_lb=h,
        ours_inid=h + 3.0 * mu + 1.0,
        ours_iid=h + 2.0 * mu + 1.0,
        li=2.0 * h + 6.0 * mu,
        kealy=h + 4.0 * mu + 2.0 * math.sqrt(mu * -math.log2(2.0 * theta)) + 1.0,
        partitions_max=2.0 * mu + 1.0,
    )


def compute_bounds(prior: PriorVector, theta: float = DEFAULT_THETA) -> BoundSet:
    """BoundSet for a prior; adds the clean-group cap when the prior is iid."""
    base = bound_formulas(prior.entropy_bits, prior.mu, theta)
    if not prior.is_iid:
        return base
    bound, _ = expected_clean_groups_bound(prior)
    return BoundSet(
        entropy_lb=base.entropy_lb,
        ours_inid=base.ours_inid,
        ours_iid=base.ours_iid,
        li=base.li,
        kealy=base.kealy,
        partitions_max=base.partitions_max,
        clean_groups_iid=bound,
    )


def expected_items_to_clean_set(p: float, n: int) -> float:
    """Expected items classified before the first defect-free set appears,
    for identical priors p and set size n: ((1-p)^-n - 1) / p.

    Equivalently the expected number of Bernoulli(1-p) draws to see n
    consecutive successes.
    """
    if not 0.0 < p < 0.5:
        raise ConfigError(f"p must lie in (0, 0.5), got {p}")
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    return math.expm1(-n * math.log1p(-p)) / p


def iid_saturated_size(p: float) -> int:
    """Smallest n with (1-p)^n <= 1/2: the greedy set size for iid p."""
    return max(1, math.ceil(LOG_HALF / math.log1p(-p)))


def expected_clean_groups_bound(prior: PriorVector) -> tuple[float, float]:
    """For an iid prior, the cap mu + 1 on the expected number of
    defect-free groups, plus the tighter stopping-time intermediate
    |P| / E[items per clean set] + 1 for tightness reporting.
    """
    if not prior.is_iid:
        raise ValueError("clean-group cap is proved only for identical priors")
    p = prior[0]
    n = iid_saturated_size(p)
    intermediate = len(prior) / expected_items_to_clean_set(p, n) + 1.0
    return prior.mu + 1.0, intermediate
