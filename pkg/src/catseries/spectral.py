"""Spectral envelope and optimal scalings of a categorical series.

Assigning a numeric value to each category turns the series into a
real-valued one whose spectrum can be analyzed; for every Fourier frequency
the envelope is the largest proportion of variance any such scaling can
concentrate there, and the maximizing scaling is reported alongside it.

Computation works on the one-hot representation with the last category
dropped (the r indicators are linearly dependent; the dropped category
implicitly receives scaling 0).  The cross-periodogram matrix is smoothed
with two circular passes of a flat (Daniell) window over the Fourier
frequencies, with the zeroed mean term at frequency 0 taking part in the
wrap-around.  Iterating the flat window gives the effective kernel a single
peak, so a line spectrum keeps a unique maximum at its line instead of a
flat-topped plateau.  Envelope values are normalized so that a flat
spectrum sits near 1: the average of the smoothed spectrum over all
Fourier ordinates equals the indicator covariance matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.ndimage

from .series import CategoricalSeries, binarize

__all__ = [
    "SpectralEnvelope",
    "spectral_envelope",
    "envelope_from_indicators",
    "scaled_series",
    "smoothed_spectrum",
    "default_window",
]


@dataclass(frozen=True, eq=False)
class SpectralEnvelope:
    """Envelope over the Fourier frequencies in (0, 1/2].

    ``scalings[k]`` maximizes the smoothed spectrum-to-variance ratio at
    ``frequencies[k]`` and is normalized to unit variance of the scaled
    series (gamma' V gamma = 1), with sign fixed so its largest-magnitude
    entry is positive.  It has length r - 1; the dropped last category has
    implicit scaling 0.
    """

    frequencies: np.ndarray
    envelope: np.ndarray
    scalings: np.ndarray
    window: int


def default_window(T: int) -> int:
    """Default Daniell smoothing span, roughly sqrt(T) and always odd."""
    return 2 * int(np.sqrt(T) / 2) + 1


def _daniell2(values: np.ndarray, window: int) -> np.ndarray:
    """Two circular flat-window passes along axis 0 (iterated Daniell)."""
    once = scipy.ndimage.uniform_filter1d(values, window, axis=0, mode="wrap")
    return scipy.ndimage.uniform_filter1d(once, window, axis=0, mode="wrap")


def smoothed_spectrum(values, window: int) -> np.ndarray:
    """Smoothed periodogram of one numeric series at frequencies 1/T..1/2.

    Uses the same centering, normalization and iterated Daniell smoothing as
    the envelope computation, so the spectrum of a scaled series divided by
    its variance can be compared against the envelope directly.
    """
    z = np.asarray(values, dtype=float)
    zc = z - z.mean()
    dft = np.fft.fft(zc)
    period = (dft * dft.conj()).real / z.size
    return _daniell2(period, window)[1 : z.size // 2 + 1]


def envelope_from_indicators(indicators: np.ndarray, window: int) -> SpectralEnvelope:
    """Envelope of an already rank-reduced (T, k) indicator matrix."""
    y = np.asarray(indicators, dtype=float)
    if y.ndim == 1:
        y = y[:, None]
    T, k = y.shape
    if T < 8:
        raise ValueError("series too short for spectral analysis (need T >= 8)")
    if window % 2 == 0 or window < 1:
        raise ValueError("smoothing window must be a positive odd integer")
    if window >= T / 2:
        raise ValueError("smoothing window must be shorter than T/2")

    yc = y - y.mean(axis=0)
    cov = (yc.T @ yc) / T
    eigvals = np.linalg.eigvalsh(cov)
    if eigvals[0] <= 1e-12:
        raise ValueError(
            "indicator covariance is singular (a category is constant over the series); "
            "drop unused categories from the alphabet and retry"
        )

    dft = np.fft.fft(yc, axis=0)
    period = dft[:, :, None] * dft.conj()[:, None, :] / T
    smooth = _daniell2(period.real, window) + 1j * _daniell2(period.imag, window)

    n_freq = T // 2
    frequencies = np.arange(1, n_freq + 1) / T
    envelope = np.empty(n_freq)
    scalings = np.empty((n_freq, k))
    for idx in range(n_freq):
        f_re = smooth[idx + 1].real
        f_re = (f_re + f_re.T) / 2.0
        vals, vecs = scipy.linalg.eigh(f_re, cov, subset_by_index=[k - 1, k - 1])
        gamma = vecs[:, 0]
        top = np.argmax(np.abs(gamma))
        if gamma[top] < 0:
            gamma = -gamma
        envelope[idx] = vals[0]
        scalings[idx] = gamma
    return SpectralEnvelope(frequencies, envelope, scalings, window)


def spectral_envelope(series: CategoricalSeries, window: int | None = None) -> SpectralEnvelope:
    """Sample spectral envelope of a categorical series.

    ``window`` is the odd length of the flat smoothing span; defaults to
    :func:`default_window`.  Raises when some declared category is constant
    over the series (the covariance of the indicators is then singular).
    """
    if window is None:
        window = default_window(len(series))
    return envelope_from_indicators(binarize(series)[:, :-1], window)


def scaled_series(series: CategoricalSeries, gamma) -> np.ndarray:
    """Numeric series obtained by mapping category i to gamma[i - 1]."""
    g = np.asarray(gamma, dtype=float)
    if g.shape != (series.alphabet.size,):
        raise ValueError("scaling vector length must equal the alphabet size")
    return g[series.codes - 1]
