"""Cross-dependence between a categorical series and a numeric series.

The two series must be aligned index by index.  For lag l >= 0 the
category indicator at time t is paired with the numeric value at t - l;
negative lags mirror the alignment.  Marginal probabilities and the numeric
variance/quantiles are estimated from the full series (variance with
divisor T); covariances are taken over the overlapping window with the
window length as divisor.
"""

from __future__ import annotations

import numpy as np

from .series import CategoricalSeries, binarize, marginal_probabilities

__all__ = [
    "DEFAULT_RHO_GRID",
    "mixed_cross_correlation",
    "mixed_quantile_cross_correlation",
    "total_mixed_cor",
    "total_mixed_qcor",
    "quantile_level_integral",
]

# 19 equispaced quantile levels; the open-interval integral over (0, 1) is
# closed by holding the integrand constant on [0, 0.05] and [0.95, 1].
DEFAULT_RHO_GRID = np.round(np.linspace(0.05, 0.95, 19), 10)


def _checked_numeric(cat: CategoricalSeries, num) -> np.ndarray:
    z = np.asarray(num, dtype=float)
    if z.ndim != 1 or z.size != len(cat):
        raise ValueError("numeric series must be one-dimensional and aligned with the categorical series")
    if not np.all(np.isfinite(z)):
        raise ValueError("numeric series must be finite")
    return z


def _windows(indicators: np.ndarray, z: np.ndarray, lag: int) -> tuple[np.ndarray, np.ndarray]:
    T = z.size
    if abs(lag) >= T:
        raise ValueError("lag exceeds series length")
    if lag >= 0:
        return indicators[lag:], z[: T - lag]
    return indicators[: T + lag], z[-lag:]


def _window_cov(y: np.ndarray, z: np.ndarray) -> np.ndarray:
    # columns of y against z, divisor = window length; centered form avoids
    # cancellation when z has a large offset
    yc = y - y.mean(axis=0)
    zc = z - z.mean()
    return (yc.T @ zc) / z.size


def mixed_cross_correlation(cat: CategoricalSeries, num, lag: int = 0) -> np.ma.MaskedArray:
    """Correlation of each category indicator with the lagged numeric series.

    Entry i is cov(Y_{t,i}, Z_{t-lag}) / sqrt(p_i (1 - p_i) var(Z)).
    Categories whose marginal probability is 0 or 1 have a constant
    indicator; their entries are masked.  Raises for a constant numeric
    series.
    """
    z = _checked_numeric(cat, num)
    sigma2 = float(np.var(z))
    if sigma2 <= 0.0:
        raise ValueError("degenerate numeric series: zero sample variance")
    p = marginal_probabilities(cat)
    var = p * (1.0 - p)
    y_win, z_win = _windows(binarize(cat), z, lag)
    cov = _window_cov(y_win, z_win)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = cov / np.sqrt(var * sigma2)
    mask = var == 0.0
    return np.ma.MaskedArray(np.where(mask, 0.0, values), mask=mask)


def mixed_quantile_cross_correlation(
    cat: CategoricalSeries, num, lag: int = 0, rho_grid=None
) -> np.ma.MaskedArray:
    """Quantile analogue: indicators against threshold exceedances of Z.

    For each level rho, Z is reduced to the indicator of Z <= q(rho) with
    q the full-series sample quantile (linear interpolation of order
    statistics), and entry (i, k) is
    cov(Y_{t,i}, 1(Z_{t-lag} <= q(rho_k))) / sqrt(p_i (1 - p_i) rho_k (1 - rho_k)).
    Returns a masked (r, len(rho_grid)) array, masked rows as above.
    """
    z = _checked_numeric(cat, num)
    rho = DEFAULT_RHO_GRID if rho_grid is None else np.asarray(rho_grid, dtype=float)
    if rho.ndim != 1 or rho.size == 0 or np.any(rho <= 0.0) or np.any(rho >= 1.0):
        raise ValueError("rho grid must lie strictly inside (0, 1)")
    p = marginal_probabilities(cat)
    var = p * (1.0 - p)
    thresholds = np.quantile(z, rho)
    y_win, z_win = _windows(binarize(cat), z, lag)
    values = np.empty((p.size, rho.size))
    for k, (level, thr) in enumerate(zip(rho, thresholds)):
        exceed = (z_win <= thr).astype(float)
        cov = _window_cov(y_win, exceed)
        with np.errstate(divide="ignore", invalid="ignore"):
            values[:, k] = cov / np.sqrt(var * level * (1.0 - level))
    mask = np.broadcast_to((var == 0.0)[:, None], values.shape)
    return np.ma.MaskedArray(np.where(mask, 0.0, values), mask=mask)


def total_mixed_cor(cat: CategoricalSeries, num, lag: int = 0) -> float:
    """Mean squared mixed cross-correlation over categories."""
    psi = mixed_cross_correlation(cat, num, lag)
    if psi.mask.any():
        raise ValueError("total mixed correlation undefined: a category has degenerate marginal probability")
    values = np.asarray(psi)
    return float(np.mean(values * values))


def quantile_level_integral(values, rho) -> float:
    """Integral of a function of the quantile level over (0, 1).

    Trapezoid rule on the grid, extended by holding the first and last
    values constant down to 0 and up to 1; a level-constant integrand
    therefore integrates exactly.
    """
    f = np.asarray(values, dtype=float)
    rho = np.asarray(rho, dtype=float)
    if rho.size < 2:
        raise ValueError("rho grid needs at least two levels")
    if np.any(np.diff(rho) <= 0):
        raise ValueError("rho grid must be strictly increasing")
    if f.shape[-1] != rho.size:
        raise ValueError("values and rho grid must have matching length")
    return np.trapezoid(f, rho, axis=-1) + f[..., 0] * rho[0] + f[..., -1] * (1.0 - rho[-1])


def total_mixed_qcor(cat: CategoricalSeries, num, lag: int = 0, rho_grid=None) -> float:
    """Mean over categories of the integrated squared quantile correlation.

    The integral over rho in (0, 1) uses :func:`quantile_level_integral`.
    """
    rho = DEFAULT_RHO_GRID if rho_grid is None else np.asarray(rho_grid, dtype=float)
    psi = mixed_quantile_cross_correlation(cat, num, lag, rho)
    if psi.mask.any():
        raise ValueError("total mixed q-correlation undefined: a category has degenerate marginal probability")
    integrals = quantile_level_integral(np.asarray(psi) ** 2, rho)
    return float(np.mean(integrals))
