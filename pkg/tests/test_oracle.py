import math

import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import prior_vectors
from gtlab.errors import ConfigError
from gtlab.oracle import OracleState, Pool, conditional_contamination
from gtlab.population import InfectionVector, PriorVector


def make_truth(bits) -> InfectionVector:
    return InfectionVector(np.array(bits, dtype=np.int8))


class TestPool:
    def test_caches_match_direct_products(self):
        prior = PriorVector(np.array([0.1, 0.2, 0.3, 0.4]))
        pool = Pool.from_items([3, 1, 0], prior)
        assert pool.items == (3, 1, 0)
        assert pool.probs == (0.4, 0.2, 0.1)
        expected_clean = (1 - 0.4) * (1 - 0.2) * (1 - 0.1)
        assert pool.clean_prob == pytest.approx(expected_clean, rel=1e-12)
        assert pool.mu == pytest.approx(0.7, rel=1e-12)

    def test_split_preserves_membership_and_caches(self):
        prior = PriorVector(np.array([0.4, 0.3, 0.2, 0.1]))
        pool = Pool.from_items([0, 1, 2, 3], prior)
        left, right = pool.split_at(2)
        assert left.items == (0, 1)
        assert right.items == (2, 3)
        assert left.clean_prob == pytest.approx(0.6 * 0.7, rel=1e-12)
        assert right.clean_prob == pytest.approx(0.8 * 0.9, rel=1e-12)
        assert left.mu + right.mu == pytest.approx(pool.mu, rel=1e-12)

    def test_split_out_of_range(self):
        prior = PriorVector(np.array([0.4, 0.3]))
        pool = Pool.from_items([0, 1], prior)
        for k in (0, 2):
            with pytest.raises(ValueError):
                pool.split_at(k)

    def test_log_space_survives_large_tiny_pools(self):
        prior = PriorVector(np.full(1000, 1e-9))
        pool = Pool.from_items(range(1000), prior)
        assert pool.clean_prob == pytest.approx(math.exp(-1e-6), rel=1e-9)
        assert pool.contaminated_prob == pytest.approx(1e-6, rel=1e-3)


class TestOracleTest:
    def test_singleton_defective_is_positive(self):
        prior = PriorVector(np.array([0.2]))
        oracle = OracleState(make_truth([1]))
        assert oracle.test(Pool.from_items([0], prior)) is True

    def test_all_clean_is_negative(self):
        prior = PriorVector(np.full(6, 0.1))
        oracle = OracleState(make_truth([0] * 6))
        assert oracle.test(Pool.from_items(range(6), prior)) is False

    def test_three_defectives_among_ten(self):
        prior = PriorVector(np.full(10, 0.1))
        truth = [0, 1, 0, 0, 1, 0, 0, 0, 1, 0]
        oracle = OracleState(make_truth(truth))
        before = oracle.test_count
        assert oracle.test(Pool.from_items(range(10), prior)) is True
        assert oracle.test_count == before + 1

    def test_empty_pool_refused(self):
        oracle = OracleState(make_truth([0, 1]))
        empty = Pool((), (), 0.0, 0.0)
        with pytest.raises(ValueError):
            oracle.test(empty)

    def test_count_matches_log_length(self):
        prior = PriorVector(np.array([0.3, 0.2, 0.1]))
        oracle = OracleState(make_truth([0, 1, 0]), record_log=True)
        pools = [Pool.from_items(s, prior) for s in ([0], [1], [0, 1, 2], [2])]
        for pool in pools:
            oracle.test(pool)
        assert oracle.test_count == len(oracle.log) == 4
        dump = oracle.dump_log()
        assert dump.splitlines() == ["0 -> -", "1 -> +", "0 1 2 -> +", "2 -> -"]

    def test_repeated_queries_identical(self):
        prior = PriorVector(np.array([0.3, 0.2]))
        oracle = OracleState(make_truth([1, 0]))
        pool = Pool.from_items([0, 1], prior)
        assert oracle.test(pool) == oracle.test(pool) == oracle.test(pool)

    def test_negative_root_counting(self):
        prior = PriorVector(np.array([0.3, 0.2]))
        oracle = OracleState(make_truth([0, 1]))
        oracle.test(Pool.from_items([0], prior), root=True)   # negative root
        oracle.test(Pool.from_items([1], prior), root=True)   # positive root
        oracle.test(Pool.from_items([0], prior))              # negative non-root
        assert oracle.negative_root_count == 1
        assert oracle.test_count == 3

    @given(prior_vectors(min_size=2, max_size=12), st.integers(0, 2**16))
    def test_monotone_in_pool_inclusion(self, prior, seed):
        """If a sub-pool tests positive, every superset pool does too."""
        rng = np.random.default_rng(seed)
        truth = InfectionVector((rng.random(len(prior)) < prior.probs).astype(np.int8))
        oracle = OracleState(truth)
        n = len(prior)
        sub = Pool.from_items(range(n // 2 + 1), prior)
        full = Pool.from_items(range(n), prior)
        if oracle.test(sub):
            assert oracle.test(full)


class TestConditionalContamination:
    def test_sub_equal_parent_is_one(self):
        prior = PriorVector(np.array([0.3, 0.1]))
        pool = Pool.from_items([0, 1], prior)
        assert conditional_contamination(pool, pool) == pytest.approx(1.0)

    def test_pair_first_item(self):
        prior = PriorVector(np.array([0.3, 0.3]))
        parent = Pool.from_items([0, 1], prior)
        sub = Pool.from_items([0], prior)
        assert conditional_contamination(sub, parent) == pytest.approx(
            0.5882352941176471, abs=1e-12)

    def test_vanishing_numerator(self):
        prior = PriorVector(np.array([1e-12, 0.4]))
        parent = Pool.from_items([0, 1], prior)
        sub = Pool.from_items([0], prior)
        assert conditional_contamination(sub, parent) < 1e-9

    def test_certainly_clean_parent_rejected(self):
        clean_parent = Pool((0, 1), (0.0, 0.0), 0.0, 0.0)
        sub = Pool((0,), (0.0,), 0.0, 0.0)
        with pytest.raises(ConfigError):
            conditional_contamination(sub, clean_parent)
