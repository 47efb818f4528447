import numpy as np
import pytest

from catseries import Alphabet, CategoricalSeries


@pytest.fixture
def s1():
    """Shared 5-point fixture over two categories."""
    return CategoricalSeries(np.array([1, 2, 1, 1, 2]), Alphabet.of_size(2))


@pytest.fixture
def periodic3():
    """Exact period-3 series: 1,2,3 repeated 200 times."""
    return CategoricalSeries(np.tile([1, 2, 3], 200), Alphabet.of_size(3))


def random_series(rng, r=None, T=None, require_all=False):
    """Random series helper; with require_all every category occurs and the
    series is not constant."""
    r = r or int(rng.integers(2, 5))
    T = T or int(rng.integers(5, 61))
    while True:
        codes = rng.integers(1, r + 1, size=T)
        if not require_all:
            break
        if len(np.unique(codes)) == r:
            break
    return CategoricalSeries(codes, Alphabet.of_size(r))
