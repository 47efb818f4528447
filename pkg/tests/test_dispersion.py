import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catseries import chebycheff_dispersion, entropy, gini_index

MEASURES = (gini_index, entropy, chebycheff_dispersion)


def simplex(draw, r):
    weights = draw(
        st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=r, max_size=r).filter(lambda w: sum(w) > 1e-6)
    )
    total = sum(weights)
    return [w / total for w in weights]


@st.composite
def probability_vectors(draw):
    r = draw(st.integers(2, 6))
    return simplex(draw, r)


@given(probability_vectors())
@settings(max_examples=200, deadline=None)
def test_measures_stay_in_unit_interval(p):
    for measure in MEASURES:
        value = measure(p)
        assert -1e-12 <= value <= 1 + 1e-12


@given(probability_vectors())
@settings(max_examples=100, deadline=None)
def test_permutation_invariance(p):
    rng = np.random.default_rng(0)
    shuffled = list(rng.permutation(p))
    for measure in MEASURES:
        assert measure(shuffled) == pytest.approx(measure(p), abs=1e-12)


@pytest.mark.parametrize("r", [2, 3, 4, 6])
def test_uniform_maximizes_and_one_point_minimizes(r):
    uniform = np.full(r, 1.0 / r)
    one_point = np.zeros(r)
    one_point[0] = 1.0
    for measure in MEASURES:
        assert measure(uniform) == pytest.approx(1.0, abs=1e-12)
        assert measure(one_point) == pytest.approx(0.0, abs=1e-12)


def test_s1_values():
    p = [0.6, 0.4]
    assert gini_index(p) == pytest.approx(0.96, abs=1e-3)
    assert entropy(p) == pytest.approx(0.9710, abs=1e-4)
    assert chebycheff_dispersion(p) == pytest.approx(0.8, abs=1e-3)


def test_rejects_tiny_alphabets_and_bad_vectors():
    for measure in MEASURES:
        with pytest.raises(ValueError, match="at least two categories"):
            measure([1.0])
        with pytest.raises(ValueError):
            measure([0.5, 0.6])
