"""Greedy max-to-min formation of saturated pools.

A pool is saturated once the probability that it contains no defective
drops to 1/2 or below.  Filling greedily from the highest remaining
probability downward keeps the pool's expected defective count below one,
which is what the per-defective descent guarantees rely on.
"""

from __future__ import annotations

import heapq
import math
from typing import Iterable

from .errors import InvariantViolation
from .oracle import LOG_HALF, Pool
from .population import PriorVector

# Slack for float accumulation when asserting analytic pool properties.
_TOL = 1e-9


class UnclassifiedPopulation:
    """Not-yet-classified item indices, max-ordered by (probability, index).

    Ties in probability break toward the smaller index so runs replay
    deterministically.  Supports extract-max and bulk reinsertion (the
    untested right-siblings of a positive split come back here).
    """

    __slots__ = ("_heap",)

    def __init__(self, prior: PriorVector, items: Iterable[int] | None = None):
        indices = range(len(prior)) if items is None else items
        self._heap = [(-float(prior.probs[i]), i) for i in indices]
        heapq.heapify(self._heap)

    def __len__(self) -> int:
        return len(self._heap)

    def __bool__(self) -> bool:
        return bool(self._heap)

    def pop_max(self) -> tuple[int, float]:
        """Remove and return (index, probability) of the top item."""
        neg_p, i = heapq.heappop(self._heap)
        return i, -neg_p

    def reinsert(self, items: Iterable[int], probs: Iterable[float]) -> None:
        for i, p in zip(items, probs):
            heapq.heappush(self._heap, (-p, i))


def saturate(pop: UnclassifiedPopulation) -> Pool:
    """Fill a pool from the top of the population until saturation.

    Stops at the first member whose inclusion pushes the clean probability
    to 1/2 or below; if the population runs out first, returns the
    unsaturated remainder.  Members are left in descending-probability
    order (ties by index), which downstream splits require.
    """
    if not pop:
        raise ValueError("cannot saturate from an empty population")
    items: list[int] = []
    probs: list[float] = []
    log_clean = 0.0
    mu = 0.0
    while pop:
        i, p = pop.pop_max()
        items.append(i)
        probs.append(p)
        log_clean += math.log1p(-p)
        mu += p
        if log_clean <= LOG_HALF:
            break
    pool = Pool(tuple(items), tuple(probs), log_clean, mu)
    if pool.is_saturated:
        _validate_saturated(pool)
    return pool


def mean_spread_bound_holds(pool: Pool) -> bool:
    """True iff mu_S < 1 - (p_max - p_min).

    Every greedily saturated pool satisfies this: dropping the last-added
    (smallest) member leaves an unsaturated pool, and expanding that
    product termwise bounds the remaining mean by 1 - p_max.
    """
    p_max, p_min = pool.probs[0], pool.probs[-1]
    return pool.mu < 1.0 - (p_max - p_min)


def _validate_saturated(pool: Pool) -> None:
    p_max, p_min = pool.probs[0], pool.probs[-1]
    if not pool.mu < 1.0 - (p_max - p_min) + _TOL:
        raise InvariantViolation(
            f"saturated pool mean {pool.mu} breaches 1 - (p_max - p_min) "
            f"= {1.0 - (p_max - p_min)}")
    if not pool.mu >= 0.5 - _TOL:
        raise InvariantViolation(
            f"saturated pool mean {pool.mu} fell below 1/2")
