import numpy as np
import pytest

from catseries import Alphabet, CategoricalSeries, scaled_series, spectral_envelope
from catseries.series import binarize
from catseries.spectral import default_window, envelope_from_indicators, smoothed_spectrum

from conftest import random_series


def test_scaled_series_lookup(s1):
    assert scaled_series(s1, [2.0, -1.0]).tolist() == [2.0, -1.0, 2.0, 2.0, -1.0]


def test_scaled_series_identity_and_constant():
    rng = np.random.default_rng(0)
    series = random_series(rng, r=4, T=30)
    r = series.alphabet.size
    assert (scaled_series(series, np.arange(1, r + 1)) == series.codes).all()
    assert np.ptp(scaled_series(series, np.ones(r))) == 0.0
    with pytest.raises(ValueError):
        scaled_series(series, np.ones(r + 1))


def test_period_two_peaks_at_half():
    series = CategoricalSeries(np.tile([1, 2], 512), Alphabet.of_size(2))
    env = spectral_envelope(series)
    peak = env.frequencies[np.argmax(env.envelope)]
    assert abs(peak - 0.5) <= 1.0 / len(series)


def test_period_three_peaks_at_one_third():
    series = CategoricalSeries(np.tile([1, 2, 3], 341), Alphabet.of_size(3))
    env = spectral_envelope(series)
    peak = env.frequencies[np.argmax(env.envelope)]
    assert abs(peak - 1.0 / 3.0) <= 1.0 / len(series)
    # cross-check the peak location against the raw spectrum of a fixed scaling
    x = scaled_series(series, [1.0, -0.5, -0.5])
    dft = np.abs(np.fft.fft(x - x.mean())) ** 2
    assert np.argmax(dft[: len(series) // 2 + 1]) == 341


def test_iid_envelope_is_flat():
    rng = np.random.default_rng(42)
    series = CategoricalSeries(rng.integers(1, 4, 2048), Alphabet.of_size(3))
    env = spectral_envelope(series)
    assert env.envelope.max() / np.median(env.envelope) < 3.0


def test_envelope_nonnegative_and_shapes():
    rng = np.random.default_rng(1)
    series = random_series(rng, r=3, T=256, require_all=True)
    env = spectral_envelope(series)
    assert (env.envelope >= -1e-12).all()
    assert env.frequencies.shape == env.envelope.shape
    assert env.scalings.shape == (env.frequencies.size, 2)
    assert env.frequencies[0] > 0 and env.frequencies[-1] == pytest.approx(0.5)


def test_scalings_normalized_to_unit_variance():
    rng = np.random.default_rng(2)
    series = random_series(rng, r=4, T=300, require_all=True)
    env = spectral_envelope(series)
    y = binarize(series)[:, :-1]
    yc = y - y.mean(axis=0)
    cov = yc.T @ yc / len(series)
    norms = np.einsum("fi,ij,fj->f", env.scalings, cov, env.scalings)
    assert np.allclose(norms, 1.0, atol=1e-10)


def test_scale_invariance():
    rng = np.random.default_rng(3)
    series = random_series(rng, r=3, T=400, require_all=True)
    y = binarize(series)[:, :-1]
    base = envelope_from_indicators(y, 21)
    scaled = envelope_from_indicators(7.3 * y, 21)
    assert np.allclose(base.envelope, scaled.envelope, atol=1e-8)


def test_self_consistency_with_scaled_series():
    rng = np.random.default_rng(4)
    series = random_series(rng, r=3, T=512, require_all=True)
    env = spectral_envelope(series)
    for k in (3, 50, 200):
        gamma = np.append(env.scalings[k], 0.0)
        x = scaled_series(series, gamma)
        ratio = smoothed_spectrum(x, env.window)[k] / np.var(x)
        assert ratio == pytest.approx(env.envelope[k], rel=0.05)


def test_eigenvalue_dominance():
    rng = np.random.default_rng(5)
    series = random_series(rng, r=4, T=256, require_all=True)
    env = spectral_envelope(series)
    y = binarize(series)[:, :-1]
    yc = y - y.mean(axis=0)
    cov = yc.T @ yc / len(series)
    for k in (0, 40, 100):
        gamma_opt = env.scalings[k]
        for _ in range(100):
            gamma = rng.normal(size=3)
            x_all = yc @ gamma
            num = smoothed_spectrum(x_all + np.asarray(y @ gamma).mean(), env.window)[k]
            quotient = num / (gamma @ cov @ gamma)
            assert env.envelope[k] >= quotient - 1e-8


def test_errors():
    rng = np.random.default_rng(6)
    series = random_series(rng, r=3, T=100, require_all=True)
    with pytest.raises(ValueError, match="odd"):
        spectral_envelope(series, window=4)
    with pytest.raises(ValueError, match="T/2"):
        spectral_envelope(series, window=51)
    short = CategoricalSeries(np.array([1, 2, 1, 2]), Alphabet.of_size(2))
    with pytest.raises(ValueError, match="too short"):
        spectral_envelope(short, window=1)
    constant_cat = CategoricalSeries(np.tile([1, 2], 50), Alphabet.of_size(3))
    with pytest.raises(ValueError, match="drop unused categories"):
        spectral_envelope(constant_cat)


def test_default_window_is_odd_and_reasonable():
    for T in (64, 600, 1024, 4096):
        w = default_window(T)
        assert w % 2 == 1 and 1 <= w < T / 2
