import math

import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import prior_vectors, prob_lists
from gtlab.errors import ConfigError
from gtlab.population import (
    PriorSpec,
    PriorVector,
    entropy,
    generate_prior,
    sample_infections,
)


class TestPriorVector:
    def test_rejects_out_of_range_entries(self):
        for bad in ([0.5], [0.0], [-0.1], [0.2, 0.7]):
            with pytest.raises(ConfigError):
                PriorVector(np.array(bad))

    def test_rejects_empty(self):
        with pytest.raises(ConfigError):
            PriorVector(np.array([]))

    def test_mu_and_len(self):
        prior = PriorVector(np.array([0.1, 0.2, 0.3]))
        assert len(prior) == 3
        assert prior.mu == pytest.approx(0.6)
        assert prior[2] == pytest.approx(0.3)

    def test_is_iid(self):
        assert PriorVector(np.full(5, 0.2)).is_iid
        assert not PriorVector(np.array([0.2, 0.3])).is_iid

    def test_immutable(self):
        prior = PriorVector(np.array([0.1, 0.2]))
        with pytest.raises(ValueError):
            prior.probs[0] = 0.4


class TestGeneratePrior:
    def test_iid_is_constant_vector(self):
        prior = generate_prior(PriorSpec("iid", 4, p=0.1))
        assert prior.probs.tolist() == [0.1, 0.1, 0.1, 0.1]

    def test_seed_determinism(self):
        spec = PriorSpec("dirichlet", 50, scale=2.0, seed=11)
        a = generate_prior(spec)
        b = generate_prior(spec)
        np.testing.assert_array_equal(a.probs, b.probs)

    def test_dirichlet_sums_to_scale(self):
        """A flat-Dirichlet draw sums to one exactly, so the scaled vector
        sums to the scale factor (up to the rare rejection adjustment)."""
        for seed in range(5):
            prior = generate_prior(PriorSpec("dirichlet", 1000, scale=3.0, seed=seed))
            assert prior.mu == pytest.approx(3.0, rel=1e-9)

    def test_truncated_exponential_mean(self):
        """Empirical mean over 100 draws tracks the analytic truncated mean
        (1/rate for rate=400, where the truncation correction is ~e^-200)."""
        total = 0.0
        count = 0
        for seed in range(100):
            prior = generate_prior(
                PriorSpec("truncated_exponential", 500, rate=400.0, seed=seed))
            total += prior.mu
            count += len(prior)
        assert total / count == pytest.approx(0.0025, rel=0.05)

    @given(st.sampled_from(["iid", "dirichlet", "truncated_exponential"]),
           st.integers(1, 60), st.integers(0, 2**32 - 1))
    def test_entries_strictly_inside_domain(self, family, size, seed):
        if family == "iid":
            spec = PriorSpec(family, size, p=0.3, seed=seed)
        elif family == "dirichlet":
            # a size-1 draw equals the scale itself, so keep it below 1/2
            scale = 0.4 if size == 1 else 1.7
            spec = PriorSpec(family, size, scale=scale, seed=seed)
        else:
            spec = PriorSpec(family, size, rate=8.0, seed=seed)
        prior = generate_prior(spec)
        assert ((prior.probs > 0.0) & (prior.probs < 0.5)).all()

    def test_invalid_parameters(self):
        with pytest.raises(ConfigError):
            PriorSpec("iid", 4, p=0.6)
        with pytest.raises(ConfigError):
            PriorSpec("iid", 0, p=0.1)
        with pytest.raises(ConfigError):
            PriorSpec("dirichlet", 4, scale=-1.0)
        with pytest.raises(ConfigError):
            PriorSpec("truncated_exponential", 4, rate=0.0)
        with pytest.raises(ConfigError):
            PriorSpec("weibull", 4, p=0.1)

    def test_hopeless_redraw_raises(self):
        # A size-1 dirichlet draw is always exactly the scale factor, so a
        # scale at or above 1/2 can never be accepted.
        with pytest.raises(ConfigError):
            generate_prior(PriorSpec("dirichlet", 1, scale=0.9))


class TestPriorSpecParse:
    def test_parse_round_trip(self):
        spec = PriorSpec.parse("dirichlet(size=1000,scale=3.5)", seed=4)
        assert spec == PriorSpec("dirichlet", 1000, scale=3.5, seed=4)
        spec = PriorSpec.parse(" iid( p=0.1, size=20 ) ")
        assert spec == PriorSpec("iid", 20, p=0.1)
        spec = PriorSpec.parse("truncated_exponential(size=500,rate=400)")
        assert spec.rate == 400.0

    def test_parse_errors(self):
        for text in ("iid", "iid(p)", "nope(size=3)", "iid(p=0.1)"):
            with pytest.raises(ConfigError):
                PriorSpec.parse(text)


class TestEntropy:
    def test_fair_coin_is_one_bit(self):
        # 0.5 is outside the algorithms' domain but entropy is defined there.
        assert entropy([0.5]) == pytest.approx(1.0)

    def test_quarter_pair(self):
        assert entropy([0.25, 0.25]) == pytest.approx(1.6225562489182657, abs=1e-12)

    def test_vanishing_probability(self):
        assert entropy([1e-15]) == pytest.approx(0.0, abs=1e-12)

    @given(prob_lists(max_size=12), prob_lists(max_size=12))
    def test_additive_over_concatenation(self, xs, ys):
        assert entropy(xs + ys) == pytest.approx(entropy(xs) + entropy(ys),
                                                 rel=1e-12, abs=1e-12)

    @given(prior_vectors())
    def test_bounded_by_population_size(self, prior):
        assert 0.0 <= prior.entropy_bits <= len(prior)


class TestSampleInfections:
    def test_fixed_seed_is_bit_identical(self):
        prior = generate_prior(PriorSpec("dirichlet", 200, scale=2.0, seed=3))
        a = sample_infections(prior, 77)
        b = sample_infections(prior, 77)
        np.testing.assert_array_equal(a.status, b.status)

    def test_floor_prior_is_effectively_clean(self):
        prior = PriorVector(np.full(5, 1e-12))
        for seed in range(4):
            assert sample_infections(prior, seed).defective_count == 0

    def test_defective_count_concentration(self):
        """With p=0.49 over 1000 items, the count stays within 3 sigma of
        490 (sigma = sqrt(sum p(1-p)) = 15.8) for a deterministic seed set."""
        prior = PriorVector(np.full(1000, 0.49))
        sigma = math.sqrt(1000 * 0.49 * 0.51)
        for seed in range(20):
            count = sample_infections(prior, seed).defective_count
            assert abs(count - 490) <= 3 * sigma
