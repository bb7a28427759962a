"""Binary descent structures for contaminated pools.

Two partitioning rules drive the adaptive descent:

* a prebuilt code tree whose per-leaf depth never exceeds the Shannon
  length ``ceil(log2(1/w_i))`` of the pool-normalized probability
  ``w_i = p_i / mu_S``, with split points chosen to keep each left-child
  test as close to a fair coin as the length budgets allow, and
* an on-the-fly prefix split choosing the cut whose left part has
  conditional contamination probability closest to 1/2.

Pool members are kept in descending-probability order, so every tree node
covers a contiguous index range and an untested right sibling is always a
contiguous suffix.

Tree construction works top-down.  Each node carries the Kraft sum
``K = sum(2^-(len_i - depth))`` of its leaves' remaining length budgets;
a cut is admissible only if both children keep ``K <= 1``, which is
exactly what guarantees every leaf ends at depth at most its Shannon
length.  Among admissible cuts the builder minimizes the expected
information shortfall of the test: the immediate ``1 - h(q)`` for the
left-child contamination probability q, plus each child's shortfall
estimated by ``V(K) = 1 - 1/K - log2(K)``, the exact expected overshoot
of a budget-K subtree in the fine-grained limit.  (For K = 1 the subtree
splits into fair coins all the way down and V = 0.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .oracle import Pool

# Shields length assignment against normalization round-off (for example
# 0.4/0.8 evaluating to 0.49999999999999994 must still code at length 1).
_LEN_SLACK = 1e-9


@dataclass(slots=True)
class TreeNode:
    """A node covering the contiguous leaf range [lo, hi)."""

    lo: int
    hi: int
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None


@dataclass(frozen=True, eq=False)
class SfhTree:
    """Code tree over a pool, leaves in pool order (descending p)."""

    pool: Pool
    lengths: tuple[int, ...]
    root: TreeNode

    def slice_pool(self, lo: int, hi: int) -> Pool:
        return self.pool._slice(lo, hi)

    def leaf_depths(self) -> list[int]:
        depths = [0] * len(self.pool)
        stack = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            if node.is_leaf:
                depths[node.lo] = depth
            else:
                stack.append((node.left, depth + 1))
                stack.append((node.right, depth + 1))
        return depths

    def render(self) -> str:
        """Indented dump, one node per line with range and clean probability."""
        lines: list[str] = []
        stack: list[tuple[TreeNode, int]] = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            sub = self.slice_pool(node.lo, node.hi)
            if node.is_leaf:
                item = self.pool.items[node.lo]
                lines.append(f"{'  ' * depth}leaf item={item} p={sub.probs[0]:.6g}")
            else:
                lines.append(
                    f"{'  ' * depth}node [{node.lo},{node.hi}) "
                    f"P_clean={sub.clean_prob:.6g}")
                stack.append((node.right, depth + 1))
                stack.append((node.left, depth + 1))
        return "\n".join(lines)


def shannon_lengths(weights) -> list[int]:
    """Codeword lengths ceil(log2(1/w)) for a descending weight vector.

    Lengths are clamped to at least 1 whenever there are two or more
    leaves, and repaired in exact integer arithmetic on the (vanishingly
    rare) float-slack case where the Kraft sum would exceed one.
    """
    m = len(weights)
    if m == 1:
        return [0]
    lengths = [max(1, math.ceil(math.log2(1.0 / w) - _LEN_SLACK)) for w in weights]
    longest = lengths[-1]
    while sum(1 << (longest - l) for l in lengths) > (1 << longest):
        lengths[-1] += 1
        longest = lengths[-1]
    return lengths


def kraft_sum(lengths) -> float:
    return sum(2.0 ** -l for l in lengths)


def build_sfh_tree(pool: Pool) -> SfhTree:
    """Construct the budget-balanced code tree for a pool.

    A singleton pool yields a depth-0 single-leaf tree.  Every internal
    node has exactly two children covering contiguous leaf ranges, and
    each leaf's depth is at most its Shannon length.
    """
    m = len(pool)
    if m == 1:
        return SfhTree(pool, (0,), TreeNode(0, 1))
    mu = pool.mu
    weights = [p / mu for p in pool.probs]
    lengths = shannon_lengths(weights)
    # Prefix tables: log clean probability for split balance (round-off
    # here only nudges tie-breaking) and dyadic Kraft mass, which float64
    # carries exactly for the length range that arises.
    log_clean = [0.0] * (m + 1)
    kraft = [0.0] * (m + 1)
    for i in range(m):
        log_clean[i + 1] = log_clean[i] + math.log1p(-pool.probs[i])
        kraft[i + 1] = kraft[i] + 2.0 ** -lengths[i]
    root = _build_node(log_clean, kraft, 0, m, 0)
    return SfhTree(pool, tuple(lengths), root)


def _subtree_overshoot(size: int, k: float) -> float:
    # Expected tests above the information content for a subtree whose
    # remaining budgets have Kraft sum k, in the fine-grained limit.
    if size <= 1 or k >= 1.0:
        return 0.0
    v = 1.0 - 1.0 / k - math.log2(k)
    return v if v > 0.0 else 0.0


def _binary_entropy(q: float) -> float:
    if q <= 0.0 or q >= 1.0:
        return 0.0
    return -(q * math.log2(q) + (1.0 - q) * math.log2(1.0 - q))


def _build_node(log_clean, kraft, lo: int, hi: int, depth: int) -> TreeNode:
    if hi - lo == 1:
        return TreeNode(lo, hi)
    scale = 2.0 ** (depth + 1)
    node_kraft = (kraft[hi] - kraft[lo]) * scale  # child-level units
    denom = -math.expm1(log_clean[hi] - log_clean[lo])
    best_k = -1
    best_cost = math.inf
    for k in range(lo + 1, hi):
        left_kraft = (kraft[k] - kraft[lo]) * scale
        right_kraft = node_kraft - left_kraft
        if left_kraft > 1.0 or right_kraft > 1.0:
            if left_kraft > 1.0:
                break  # prefix sums only grow; no later cut is admissible
            continue
        q = -math.expm1(log_clean[k] - log_clean[lo]) / denom
        cost = (1.0 - _binary_entropy(q)
                + q * _subtree_overshoot(k - lo, left_kraft)
                + (1.0 - q) * _subtree_overshoot(hi - k, right_kraft))
        if cost < best_cost:
            best_cost = cost
            best_k = k
    if best_k < 0:
        raise AssertionError("no admissible cut; length budgets inconsistent")
    return TreeNode(lo, hi,
                    _build_node(log_clean, kraft, lo, best_k, depth + 1),
                    _build_node(log_clean, kraft, best_k, hi, depth + 1))


def me_split(pool: Pool) -> tuple[Pool, Pool]:
    """Cut the pool into the prefix/suffix pair whose left part's
    conditional contamination probability is nearest 1/2.

    All ``len(pool) - 1`` prefix cuts are scanned; ties break toward the
    smaller left part.
    """
    m = len(pool)
    if m < 2:
        raise ValueError("need at least two members to split")
    denom = -math.expm1(pool.log_clean)
    best_k = 1
    best_diff = math.inf
    log_acc = 0.0
    for k in range(1, m):
        log_acc += math.log1p(-pool.probs[k - 1])
        diff = abs(-math.expm1(log_acc) / denom - 0.5)
        if diff < best_diff:
            best_diff = diff
            best_k = k
    return pool.split_at(best_k)
