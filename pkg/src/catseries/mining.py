"""Feature vectors, dissimilarities, 2-D scaling and outlier scoring.

Two dissimilarities between categorical series are provided, both squared
Euclidean distances between per-series feature vectors:

* ``dcc``: per lag, the r^2 Cramer-style cells (p_ij - p_i p_j)^2/(p_i p_j)
  and the r signed Cohen terms (p_ii - p_i^2)/(1 - sum p^2), then the r
  marginals.
* ``db``: per lag, the r^2 signed correlations of the one-hot components,
  then the r marginals.

Because the distance is the squared norm of a feature difference, feature
matrices can be handed to any external clustering or classification tool
while the distance matrix feeds medoid methods, scaling and outlier
scoring directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .association import cohens_kappa, cramers_v, total_correlation
from .series import CategoricalSeries, lag_tables, marginal_probabilities

__all__ = [
    "FeatureVector",
    "DistanceMatrix",
    "Embedding",
    "BoxplotOutliers",
    "dcc_features",
    "db_features",
    "distance_matrix",
    "feature_distance_matrix",
    "two_dimensional_scaling",
    "outlier_scores",
    "boxplot_outlier_count",
]


@dataclass(frozen=True, eq=False)
class FeatureVector:
    """Flat numeric features with one descriptor string per entry."""

    values: np.ndarray
    schema: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.schema) != self.values.size:
            raise ValueError("schema length must match the number of features")


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric pairwise dissimilarities over a corpus."""

    values: np.ndarray
    metric: str  # "dcc" | "db" | "euclidean-on-features"
    max_lag: int
    ids: tuple[str, ...] | None = None

    @property
    def size(self) -> int:
        return int(self.values.shape[0])


def _marginal_schema(series: CategoricalSeries) -> list[str]:
    return [f"p.{s}" for s in series.alphabet.symbols]


def _cell_schema(prefix: str, lag: int, symbols) -> list[str]:
    return [f"{prefix}.l{lag}.{a}_{b}" for a in symbols for b in symbols]


def dcc_features(series: CategoricalSeries, max_lag: int = 1) -> FeatureVector:
    """Features whose squared-difference norm is the ``dcc`` dissimilarity."""
    p = marginal_probabilities(series)
    if np.any(p == 0.0):
        raise ValueError("degenerate marginals: every declared category must occur")
    if np.sum(p * p) >= 1.0:
        raise ValueError("degenerate marginals: series is constant")
    symbols = series.alphabet.symbols
    blocks, schema = [], []
    for lag in range(1, max_lag + 1):
        tables = lag_tables(series, lag)
        blocks.append(cramers_v(tables).components)
        schema.extend(_cell_schema("v", lag, symbols))
        blocks.append(cohens_kappa(tables).components)
        schema.extend(f"kappa.l{lag}.{s}" for s in symbols)
    blocks.append(p)
    schema.extend(_marginal_schema(series))
    return FeatureVector(np.concatenate(blocks), tuple(schema))


def db_features(series: CategoricalSeries, max_lag: int = 1) -> FeatureVector:
    """Features whose squared-difference norm is the ``db`` dissimilarity."""
    p = marginal_probabilities(series)
    if np.any(p <= 0.0) or np.any(p >= 1.0):
        raise ValueError("degenerate marginals: component correlations undefined")
    symbols = series.alphabet.symbols
    blocks, schema = [], []
    for lag in range(1, max_lag + 1):
        blocks.append(total_correlation(lag_tables(series, lag)).components)
        schema.extend(_cell_schema("psi", lag, symbols))
    blocks.append(p)
    schema.extend(_marginal_schema(series))
    return FeatureVector(np.concatenate(blocks), tuple(schema))


_METRIC_FEATURES = {"dcc": dcc_features, "db": db_features}


def distance_matrix(
    corpus: Sequence[CategoricalSeries],
    metric: str = "db",
    max_lag: int = 1,
    ids: Sequence[str] | None = None,
    workers: int = 1,
) -> DistanceMatrix:
    """Pairwise dissimilarity matrix over a corpus sharing one alphabet.

    Each unordered pair is evaluated once; the result has an exactly zero
    diagonal and exact symmetry.  ``workers`` > 1 extracts per-series
    features on a thread pool; the result does not depend on the schedule.
    """
    if metric not in _METRIC_FEATURES:
        raise ValueError(f"unknown metric {metric!r}; expected one of {sorted(_METRIC_FEATURES)}")
    if not corpus:
        raise ValueError("empty corpus")
    alphabet = corpus[0].alphabet
    for idx, series in enumerate(corpus):
        if series.alphabet.symbols != alphabet.symbols:
            raise ValueError(f"series at index {idx} does not share the corpus alphabet")
    extract = _METRIC_FEATURES[metric]
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda s: extract(s, max_lag).values, corpus))
    else:
        rows = [extract(s, max_lag).values for s in corpus]
    features = np.vstack(rows)
    n = len(corpus)
    values = np.zeros((n, n))
    for a in range(n):
        for b in range(a + 1, n):
            diff = features[a] - features[b]
            d = float(diff @ diff)
            values[a, b] = d
            values[b, a] = d
    return DistanceMatrix(values, metric, max_lag, tuple(ids) if ids is not None else None)


def feature_distance_matrix(features: np.ndarray, ids: Sequence[str] | None = None) -> DistanceMatrix:
    """Plain Euclidean distances between rows of an arbitrary feature matrix."""
    x = np.asarray(features, dtype=float)
    n = x.shape[0]
    values = np.zeros((n, n))
    for a in range(n):
        for b in range(a + 1, n):
            diff = x[a] - x[b]
            d = float(np.sqrt(diff @ diff))
            values[a, b] = d
            values[b, a] = d
    return DistanceMatrix(values, "euclidean-on-features", 0, tuple(ids) if ids is not None else None)


@dataclass(frozen=True, eq=False)
class Embedding:
    """Classical 2-D scaling of a dissimilarity matrix.

    ``clamped_mass`` is the share of total eigenvalue magnitude lost to
    clamping negative eigenvalues at zero: 0 for exactly plane-embeddable
    distances, larger when the embedding is a rougher approximation.
    """

    coordinates: np.ndarray  # (n, 2), centered at the origin
    eigenvalues: np.ndarray  # all n, descending
    clamped_mass: float


def two_dimensional_scaling(dm: DistanceMatrix | np.ndarray) -> Embedding:
    """Classical metric scaling onto the plane.

    Double-centers -D^2/2, takes the top two eigenpairs and scales the
    eigenvectors by the square roots of the (zero-clamped) eigenvalues.
    Column signs are fixed so the largest-magnitude coordinate in each
    column is positive.
    """
    d = dm.values if isinstance(dm, DistanceMatrix) else np.asarray(dm, dtype=float)
    n = d.shape[0]
    if n < 3:
        raise ValueError("need at least three objects for 2-D scaling")
    centered = -0.5 * d**2
    centered = centered - centered.mean(axis=0) - centered.mean(axis=1)[:, None] + centered.mean()
    eigvals, eigvecs = np.linalg.eigh((centered + centered.T) / 2.0)
    order = np.argsort(eigvals)[::-1]
    eigvals, eigvecs = eigvals[order], eigvecs[:, order]
    coords = eigvecs[:, :2] * np.sqrt(np.maximum(eigvals[:2], 0.0))
    for col in range(2):
        top = np.argmax(np.abs(coords[:, col]))
        if coords[top, col] < 0:
            coords[:, col] = -coords[:, col]
    magnitude = float(np.sum(np.abs(eigvals)))
    clamped = float(np.sum(np.maximum(-eigvals, 0.0)) / magnitude) if magnitude > 0 else 0.0
    return Embedding(coords, eigvals, clamped)


def outlier_scores(dm: DistanceMatrix | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distance-sum outlyingness of every object, plus the ranking.

    The score of an object is the sum of its distances to all others; the
    returned order lists indices by decreasing score, ties broken by
    ascending index.
    """
    d = dm.values if isinstance(dm, DistanceMatrix) else np.asarray(dm, dtype=float)
    scores = d.sum(axis=1)
    order = np.lexsort((np.arange(scores.size), -scores))
    return scores, order


@dataclass(frozen=True)
class BoxplotOutliers:
    """Objects whose score clears the upper boxplot fence."""

    count: int
    indices: tuple[int, ...]
    q1: float
    q3: float
    threshold: float
    range_factor: float


def boxplot_outlier_count(scores, range_factor: float = 1.0) -> BoxplotOutliers:
    """Count scores above Q3 + range_factor * IQR (quartiles by linear
    interpolation).  The default factor 1.0 is deliberately sensitive; use
    1.5 for the conventional fence."""
    s = np.asarray(scores, dtype=float)
    if s.size < 4:
        raise ValueError("need at least four scores for the boxplot rule")
    if range_factor < 0:
        raise ValueError("range factor must be non-negative")
    q1, q3 = np.quantile(s, [0.25, 0.75])
    threshold = q3 + range_factor * (q3 - q1)
    flagged = tuple(int(i) for i in np.flatnonzero(s > threshold))
    return BoxplotOutliers(len(flagged), flagged, float(q1), float(q3), float(threshold), range_factor)
