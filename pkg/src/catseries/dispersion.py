"""Dispersion measures of a marginal categorical distribution.

All three measures live in [0, 1]: 0 for a one-point distribution and 1 for
the uniform one.  They take a probability vector, so they can be applied to
either estimated or hypothetical marginals.
"""

from __future__ import annotations

import numpy as np

__all__ = ["gini_index", "entropy", "chebycheff_dispersion"]


def _checked(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size < 2:
        raise ValueError("need at least two categories")
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-9:
        raise ValueError("not a probability vector")
    return p


def gini_index(p) -> float:
    """Gini index r/(r-1) * (1 - sum(p_i^2))."""
    p = _checked(p)
    r = p.size
    return float(r / (r - 1) * (1.0 - np.sum(p * p)))


def entropy(p) -> float:
    """Normalized entropy -1/ln(r) * sum(p_i ln p_i), with 0 ln 0 = 0."""
    p = _checked(p)
    r = p.size
    nz = p[p > 0]
    return float(-np.sum(nz * np.log(nz)) / np.log(r))


def chebycheff_dispersion(p) -> float:
    """Chebycheff dispersion r/(r-1) * (1 - max_i p_i)."""
    p = _checked(p)
    r = p.size
    return float(r / (r - 1) * (1.0 - p.max()))
