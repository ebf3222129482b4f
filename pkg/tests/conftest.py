import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=300, deadline=None, suppress_health_check=list(HealthCheck))
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


small_ints = st.integers(min_value=-5, max_value=5)
fractions = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))


@st.composite
def pforms(draw, n, p, coeffs=small_ints):
    from stableforms.forms import PForm, basis_indices

    idx = basis_indices(n, p)
    vals = draw(st.lists(coeffs, min_size=len(idx), max_size=len(idx)))
    return PForm(n, p, dict(zip(idx, vals)))


@st.composite
def vectors(draw, n, coeffs=small_ints):
    return [Fraction(x) for x in draw(st.lists(coeffs, min_size=n, max_size=n))]


@st.composite
def unimodular(draw, n, steps=8):
    """Product of random integer shears, so det = 1 and entries stay small."""
    seed = draw(st.integers(0, 2**32 - 1))
    from stableforms.acceptance import random_sl

    return random_sl(n, random.Random(seed), steps=steps)


@pytest.fixture
def rng():
    return random.Random(20260101)
