"""The five end-to-end adaptive testing strategies.

Every runner consumes a prior and a fresh oracle, classifies the whole
population with zero error, and reports test accounting in a RunRecord.
The two refined strategies never test the right child of a split: a
negative left test implies the right side is contaminated, and a positive
left test sends the untested right side back into the unclassified
population to be regrouped later.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass

import numpy as np

from .bounds import DEFAULT_THETA
from .errors import ConfigError, InvariantViolation
from .oracle import OracleState, Pool
from .population import InfectionVector, PriorVector
from .saturation import UnclassifiedPopulation, saturate
from .trees import build_sfh_tree, me_split

logger = logging.getLogger(__name__)

ALGORITHMS = ("sfh", "me", "li", "li-improved", "kealy")

_TOL = 1e-9


@dataclass
class RunRecord:
    """Outcome of a single run: counts, per-defective costs, recovery."""

    algorithm: str
    total_tests: int
    negative_root_tests: int
    per_defective_costs: list[tuple[int, int]]
    recovered: np.ndarray
    wall_time: float
    me_bound_violations: int = 0


def verify_zero_error(record: RunRecord, truth: InfectionVector) -> bool:
    """Exact equality of the recovered labels with the ground truth."""
    return (record.recovered.shape == truth.status.shape
            and bool((record.recovered == truth.status).all()))


def run_algorithm(name: str, prior: PriorVector, oracle: OracleState,
                  theta: float = DEFAULT_THETA) -> RunRecord:
    """Dispatch by CLI name: sfh | me | li | li-improved | kealy."""
    if name == "sfh":
        return run_refined_laminar_sfh(prior, oracle)
    if name == "me":
        return run_refined_laminar_me(prior, oracle)
    if name == "li":
        return run_li_laminar(prior, oracle)
    if name == "li-improved":
        return run_li_improved(prior, oracle)
    if name == "kealy":
        return run_kealy(prior, oracle, theta)
    raise ConfigError(f"unknown algorithm {name!r}")


class _Run:
    """Shared bookkeeping: classification state and exit auditing."""

    def __init__(self, algorithm: str, prior: PriorVector, oracle: OracleState):
        if len(oracle.truth) != len(prior):
            raise ConfigError("oracle truth length does not match the prior")
        self.algorithm = algorithm
        self.prior = prior
        self.oracle = oracle
        self.recovered = np.zeros(len(prior), dtype=np.int8)
        self.classified = np.zeros(len(prior), dtype=bool)
        self.classified_count = 0
        self.per_defective_costs: list[tuple[int, int]] = []
        self.me_bound_violations = 0
        self._start = time.perf_counter()

    def mark_clean(self, items) -> None:
        for i in items:
            if self.classified[i]:
                raise InvariantViolation(f"item {i} classified twice")
            self.classified[i] = True
        self.classified_count += len(items)

    def mark_defective(self, item: int) -> None:
        if self.classified[item]:
            raise InvariantViolation(f"item {item} classified twice")
        self.classified[item] = True
        self.classified_count += 1
        self.recovered[item] = 1

    def check_accounting(self, unclassified: int) -> None:
        # Between sets, every item is either still unclassified or labeled.
        if unclassified + self.classified_count != len(self.prior):
            raise InvariantViolation(
                f"{unclassified} unclassified + {self.classified_count} "
                f"classified != {len(self.prior)} items")

    def finish(self, audit_negative_roots: bool = False) -> RunRecord:
        if self.classified_count != len(self.prior) or not self.classified.all():
            raise InvariantViolation("run ended with unclassified items")
        if audit_negative_roots:
            limit = 2.0 * self.prior.mu + 1.0 + _TOL
            if self.oracle.negative_root_count > limit:
                raise InvariantViolation(
                    f"{self.oracle.negative_root_count} negative first-stage "
                    f"tests exceed 2*mu+1 = {limit}")
        return RunRecord(
            algorithm=self.algorithm,
            total_tests=self.oracle.test_count,
            negative_root_tests=self.oracle.negative_root_count,
            per_defective_costs=self.per_defective_costs,
            recovered=self.recovered,
            wall_time=time.perf_counter() - self._start,
            me_bound_violations=self.me_bound_violations,
        )


def run_refined_laminar_sfh(prior: PriorVector, oracle: OracleState) -> RunRecord:
    """Saturate, root-test, and descend a code tree, never testing right
    children; positive-split right siblings return to the population."""
    return _run_refined(prior, oracle, "sfh")


def run_refined_laminar_me(prior: PriorVector, oracle: OracleState) -> RunRecord:
    """As the code-tree variant, but each contaminated set is cut on the
    fly at the prefix whose conditional contamination is nearest 1/2."""
    return _run_refined(prior, oracle, "me")


def _run_refined(prior: PriorVector, oracle: OracleState, mode: str) -> RunRecord:
    run = _Run(mode, prior, oracle)
    pop = UnclassifiedPopulation(prior)
    while pop:
        run.check_accounting(len(pop))
        pool = saturate(pop)
        if not oracle.test(pool, root=True):
            run.mark_clean(pool.items)
            continue
        if mode == "sfh":
            item, cost = _descend_tree(run, pop, pool)
        else:
            item, cost = _descend_me(run, pop, pool)
        run.mark_defective(item)
        run.per_defective_costs.append((item, cost))
        _check_defective_cost(run, mode, item, cost)
    return run.finish(audit_negative_roots=True)


def _descend_tree(run: _Run, pop: UnclassifiedPopulation, pool: Pool,
                  collect_rights: list[int] | None = None) -> tuple[int, int]:
    """Walk a code tree to the leftmost defective; one test per level.

    Right siblings of positive lefts are reinserted into ``pop``, or
    collected into ``collect_rights`` when the caller keeps them aside.
    Returns (defective item, tests spent including the set's root test).
    """
    tree = build_sfh_tree(pool)
    node = tree.root
    cost = 1
    while not node.is_leaf:
        left, right = node.left, node.right
        cost += 1
        if run.oracle.test(tree.slice_pool(left.lo, left.hi)):
            if collect_rights is None:
                pop.reinsert(tree.pool.items[right.lo:right.hi],
                             tree.pool.probs[right.lo:right.hi])
            else:
                collect_rights.extend(tree.pool.items[right.lo:right.hi])
            node = left
        else:
            run.mark_clean(tree.pool.items[left.lo:left.hi])
            node = right
    return tree.pool.items[node.lo], cost


def _descend_me(run: _Run, pop: UnclassifiedPopulation, pool: Pool) -> tuple[int, int]:
    current = pool
    cost = 1
    while len(current) > 1:
        left, right = me_split(current)
        cost += 1
        if run.oracle.test(left):
            pop.reinsert(right.items, right.probs)
            current = left
        else:
            run.mark_clean(left.items)
            current = right
    return current.items[0], cost


def _check_defective_cost(run: _Run, mode: str, item: int, cost: int) -> None:
    p = run.prior[item]
    if mode == "sfh":
        # Hard guarantee: descent plus root test stays under log2(1/p) + 2
        # whenever the pool mean is below one, which saturation ensures.
        if not cost < math.log2(1.0 / p) + 2.0:
            raise InvariantViolation(
                f"defective {item} (p={p}) cost {cost} tests, bound "
                f"{math.log2(1.0 / p) + 2.0}")
    else:
        # The analogous cut-rule bound ignores quantization error, so it is
        # a soft check: violations are tallied and logged, never fatal.
        if cost > math.ceil(math.log2(1.0 / p)) + 2:
            run.me_bound_violations += 1
            logger.warning(
                "me descent for item %d (p=%g) took %d tests, soft bound %d",
                item, p, cost, math.ceil(math.log2(1.0 / p)) + 2)


def run_li_laminar(prior: PriorVector, oracle: OracleState) -> RunRecord:
    """Baseline: disjoint saturated sets; every contaminated node is cut
    and BOTH children are tested; no reinsertion."""
    return _run_li(prior, oracle, improved=False)


def run_li_improved(prior: PriorVector, oracle: OracleState) -> RunRecord:
    """Baseline correction: when the left child tests negative the right
    child is inferred contaminated instead of tested."""
    return _run_li(prior, oracle, improved=True)


def _run_li(prior: PriorVector, oracle: OracleState, improved: bool) -> RunRecord:
    run = _Run("li-improved" if improved else "li", prior, oracle)
    pop = UnclassifiedPopulation(prior)
    while pop:
        run.check_accounting(len(pop))
        pool = saturate(pop)
        if not oracle.test(pool, root=True):
            run.mark_clean(pool.items)
            continue
        stack = [pool]  # known-contaminated nodes, left subtrees first
        while stack:
            node = stack.pop()
            if len(node) == 1:
                run.mark_defective(node.items[0])
                continue
            left, right = me_split(node)
            left_positive = run.oracle.test(left)
            if improved and not left_positive:
                run.mark_clean(left.items)
                stack.append(right)  # inferred contaminated, no test spent
                continue
            if run.oracle.test(right):
                stack.append(right)
            else:
                run.mark_clean(right.items)
            if left_positive:
                stack.append(left)
            else:
                run.mark_clean(left.items)
    return run.finish(audit_negative_roots=True)


def run_kealy(prior: PriorVector, oracle: OracleState,
              theta: float = DEFAULT_THETA) -> RunRecord:
    """Baseline approximation: probability bins, sets filled to mean 1/2,
    and untested right siblings pooled and retested per set.

    Items are binned by halving probability brackets (p in (2^-(k+1),
    2^-k]); items below ``theta`` share a tail bin.  Within a bin, sets are
    filled greedily until their expected defective count reaches 1/2.  A
    contaminated set descends a code tree to its leftmost defective; the
    inconclusive right siblings met on the way are unioned into a new set
    and processed the same way until none remain.  Sets stay disjoint.
    """
    if not 0.0 < theta < 0.5:
        raise ConfigError(f"theta must lie in (0, 0.5), got {theta}")
    run = _Run("kealy", prior, oracle)
    bins: dict[int, list[int]] = {}
    tail: list[int] = []
    for i, p in enumerate(prior.probs):
        p = float(p)
        if p < theta:
            tail.append(i)
        else:
            bins.setdefault(math.floor(-math.log2(p)), []).append(i)
    ordered = [bins[k] for k in sorted(bins)]
    if tail:
        ordered.append(tail)
    by_prob = lambda i: (-prior.probs[i], i)
    for bin_items in ordered:
        bin_items.sort(key=by_prob)
        start = 0
        while start < len(bin_items):
            members: list[int] = []
            mu = 0.0
            while start < len(bin_items) and mu < 0.5:
                i = bin_items[start]
                members.append(i)
                mu += prior[i]
                start += 1
            current = Pool.from_items(members, prior)
            while True:
                if not oracle.test(current, root=True):
                    run.mark_clean(current.items)
                    break
                rights: list[int] = []
                item, _cost = _descend_tree(run, None, current,
                                            collect_rights=rights)
                run.mark_defective(item)
                if not rights:
                    break
                rights.sort(key=by_prob)
                current = Pool.from_items(rights, prior)
    return run.finish()
