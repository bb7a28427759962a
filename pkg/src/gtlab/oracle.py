"""Pools of items and the contamination-test oracle.

The oracle is the only gateway between the testing algorithms and the
hidden ground truth: a test on a pool answers whether at least one member
is defective (a noiseless OR), and the oracle owns all test accounting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .population import InfectionVector, PriorVector

LOG_HALF = math.log(0.5)


@dataclass(frozen=True, eq=False)
class Pool:
    """An ordered set of item indices with cached probability sums.

    ``log_clean`` is ``sum(log1p(-p_i))`` over members, so the probability
    that the pool holds no defective is ``exp(log_clean)``.  Products are
    kept in log space because pools of a thousand tiny probabilities
    underflow a direct product.
    """

    items: tuple[int, ...]
    probs: tuple[float, ...]
    log_clean: float
    mu: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "_idx", np.array(self.items, dtype=np.intp))

    @classmethod
    def from_items(cls, items, prior: PriorVector) -> "Pool":
        items = tuple(items)
        probs = tuple(float(prior.probs[i]) for i in items)
        log_clean = 0.0
        mu = 0.0
        for p in probs:
            log_clean += math.log1p(-p)
            mu += p
        return cls(items, probs, log_clean, mu)

    def __len__(self) -> int:
        return len(self.items)

    @property
    def clean_prob(self) -> float:
        return math.exp(self.log_clean)

    @property
    def contaminated_prob(self) -> float:
        return -math.expm1(self.log_clean)

    @property
    def is_saturated(self) -> bool:
        return self.log_clean <= LOG_HALF

    def split_at(self, k: int) -> tuple["Pool", "Pool"]:
        """Split into (first k members, rest), recomputing exact caches."""
        if not 0 < k < len(self.items):
            raise ValueError(f"split point {k} outside 1..{len(self.items) - 1}")
        return self._slice(0, k), self._slice(k, len(self.items))

    def _slice(self, lo: int, hi: int) -> "Pool":
        probs = self.probs[lo:hi]
        log_clean = 0.0
        mu = 0.0
        for p in probs:
            log_clean += math.log1p(-p)
            mu += p
        return Pool(self.items[lo:hi], probs, log_clean, mu)


@dataclass
class OracleState:
    """Per-run test oracle wrapping the hidden truth vector.

    ``test_count`` equals the number of ``test`` calls since construction;
    algorithms receive only the boolean outcome.  First-stage tests on a
    freshly formed set are flagged ``root=True`` so negative-set statistics
    can be audited without trusting the algorithms to count.
    """

    truth: InfectionVector
    record_log: bool = False
    test_count: int = 0
    negative_root_count: int = 0
    log: list[tuple[tuple[int, ...], bool]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._flags = self.truth.status != 0

    def test(self, pool: Pool, root: bool = False) -> bool:
        """True iff the pool is contaminated.  Counts exactly one test."""
        if len(pool.items) == 0:
            raise ValueError("refusing a zero-size test; no algorithm issues one")
        result = bool(self._flags[pool._idx].any())
        self.test_count += 1
        if root and not result:
            self.negative_root_count += 1
        if self.record_log:
            self.log.append((pool.items, result))
        return result

    def dump_log(self) -> str:
        """One line per test: sorted member indices, then +/- outcome."""
        lines = [
            f"{' '.join(str(i) for i in sorted(items))} -> {'+' if res else '-'}"
            for items, res in self.log
        ]
        return "\n".join(lines)


def conditional_contamination(sub: Pool, parent: Pool) -> float:
    """P(sub is contaminated | parent is contaminated) for sub within parent.

    Equals (1 - prod(1-p) over sub) / (1 - prod(1-p) over parent); both
    complements are evaluated as -expm1(log_clean) for accuracy with
    near-clean pools.
    """
    denom = -math.expm1(parent.log_clean)
    if denom <= 0.0:
        raise ConfigError("parent pool is certainly clean; conditioning undefined")
    return -math.expm1(sub.log_clean) / denom
