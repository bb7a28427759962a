import hypothesis
import hypothesis.strategies as st
import numpy as np

from gtlab.population import PriorVector

hypothesis.settings.register_profile(
    "default", max_examples=80, derandomize=True, deadline=None)
hypothesis.settings.load_profile("default")


def prob_values(min_value=1e-6, max_value=0.499):
    return st.floats(min_value=min_value, max_value=max_value,
                     allow_nan=False, allow_infinity=False)


def prob_lists(min_size=1, max_size=30, **kwargs):
    return st.lists(prob_values(**kwargs), min_size=min_size, max_size=max_size)


def prior_vectors(min_size=1, max_size=30, **kwargs):
    return prob_lists(min_size=min_size, max_size=max_size, **kwargs).map(
        lambda ps: PriorVector(np.array(ps)))
