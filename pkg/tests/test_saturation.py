import math

import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import prior_vectors
from gtlab.population import PriorVector
from gtlab.saturation import UnclassifiedPopulation, mean_spread_bound_holds, saturate


class TestUnclassifiedPopulation:
    def test_pops_by_descending_probability_then_index(self):
        prior = PriorVector(np.array([0.2, 0.4, 0.2, 0.3]))
        pop = UnclassifiedPopulation(prior)
        order = [pop.pop_max()[0] for _ in range(4)]
        assert order == [1, 3, 0, 2]

    def test_reinsert_restores_ordering(self):
        prior = PriorVector(np.array([0.2, 0.4, 0.3]))
        pop = UnclassifiedPopulation(prior)
        i, p = pop.pop_max()
        assert i == 1
        pop.reinsert([i], [p])
        assert pop.pop_max()[0] == 1
        assert len(pop) == 2

    def test_subset_construction(self):
        prior = PriorVector(np.array([0.2, 0.4, 0.3]))
        pop = UnclassifiedPopulation(prior, items=[0, 2])
        assert len(pop) == 2
        assert pop.pop_max()[0] == 2


class TestSaturate:
    def test_worked_example(self):
        """Clean probability walks 0.6 then 0.42 <= 1/2, so the pool takes
        exactly the two largest items."""
        prior = PriorVector(np.array([0.2, 0.4, 0.3]))
        pop = UnclassifiedPopulation(prior)
        pool = saturate(pop)
        assert pool.items == (1, 2)
        assert pool.clean_prob == pytest.approx(0.42, rel=1e-12)
        assert pool.is_saturated
        assert len(pop) == 1

    def test_single_item_exhaustion(self):
        prior = PriorVector(np.array([0.1]))
        pool = saturate(UnclassifiedPopulation(prior))
        assert pool.items == (0,)
        assert not pool.is_saturated
        assert pool.clean_prob == pytest.approx(0.9)

    def test_empty_population_rejected(self):
        prior = PriorVector(np.array([0.1]))
        pop = UnclassifiedPopulation(prior, items=[])
        with pytest.raises(ValueError):
            saturate(pop)

    @given(st.sampled_from([round(0.01 * k, 2) for k in range(1, 50)]))
    def test_iid_closed_form_size(self, p):
        """For identical priors the pool size matches ceil(log(1/2)/log(1-p)),
        cross-checked against a direct product loop."""
        n_formula = math.ceil(math.log(0.5) / math.log(1.0 - p))
        # independent oracle: multiply (1-p) until the product crosses 1/2
        n_loop, product = 0, 1.0
        while product > 0.5:
            product *= 1.0 - p
            n_loop += 1
        assert n_formula == n_loop
        prior = PriorVector(np.full(n_formula + 5, p))
        pool = saturate(UnclassifiedPopulation(prior))
        assert len(pool) == n_formula

    def test_exhaustion_returns_all_remaining(self):
        prior = PriorVector(np.full(3, 0.01))
        pop = UnclassifiedPopulation(prior)
        pool = saturate(pop)
        assert len(pool) == 3
        assert not pool.is_saturated
        assert len(pop) == 0


class TestSaturatedPoolProperties:
    @given(prior_vectors(min_size=1, max_size=40))
    def test_invariants_across_random_priors(self, prior):
        """Every saturated pool: P <= 1/2, mean in [1/2, 1-(pmax-pmin)),
        descending member order, and dropping the last member desaturates."""
        pop = UnclassifiedPopulation(prior)
        while pop:
            pool = saturate(pop)
            probs = pool.probs
            assert list(probs) == sorted(probs, reverse=True)
            if not pool.is_saturated:
                assert len(pop) == 0
                continue
            assert pool.clean_prob <= 0.5 + 1e-12
            assert pool.mu >= 0.5 - 1e-9
            assert mean_spread_bound_holds(pool)
            assert pool.mu < 1.0
            # minimality, via a direct product over all but the last member
            partial = 1.0
            for p in probs[:-1]:
                partial *= 1.0 - p
            assert partial > 0.5

    def test_tie_break_by_index(self):
        prior = PriorVector(np.array([0.3, 0.3, 0.3, 0.3]))
        pool = saturate(UnclassifiedPopulation(prior))
        assert pool.items == (0, 1)
