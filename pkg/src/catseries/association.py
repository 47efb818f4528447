"""Lag-indexed association measures for a categorical series.

Every function takes the :class:`~catseries.series.LagTables` of one series
at one lag and returns a :class:`SerialMeasureResult` holding the scalar
estimate plus, where meaningful, the per-component terms the estimate is
built from.  The component layout and how the scalar is recovered from the
components are documented per function; results never clamp sample values
into the population range (small-sample estimates may fall outside it).

Throughout, ``p`` denotes the marginal probability vector (full-series
counts over T) and ``p_ij`` the lagged joint table (pair counts over
T - lag); cells whose independence factorization ``p_i p_j`` is zero cannot
deviate from it and contribute 0 to the chi-square style sums.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import LagTables

__all__ = [
    "SerialMeasureResult",
    "PsiMatrix",
    "gk_tau",
    "gk_lambda",
    "uncertainty_coefficient",
    "pearson_measure",
    "phi2_measure",
    "sakoda_measure",
    "cramers_v",
    "cohens_kappa",
    "psi_matrix",
    "total_correlation",
]

@dataclass(frozen=True, eq=False)
class SerialMeasureResult:
    """Scalar association estimate at one lag, with optional components.

    ``components`` is a flat vector; ``component_labels`` names each entry
    with 1-based category indices ("j=2" for per-category terms, "i=1,j=2"
    for per-cell terms, rows = current category, columns = past category).
    Measures for which no component expansion is defined carry ``None``.
    """

    measure: str
    lag: int
    value: float
    components: np.ndarray | None = None
    component_labels: tuple[str, ...] | None = None


@dataclass(frozen=True, eq=False)
class PsiMatrix:
    """Correlations between current and lagged one-hot components.

    ``values`` is a masked r x r array; entry (i, j) correlates the indicator
    of category i now with the indicator of category j ``lag`` steps back.
    Entries involving a category with marginal probability 0 or 1 are masked
    (the indicator is constant, so the correlation is undefined).
    """

    lag: int
    values: np.ma.MaskedArray


def _cell_labels(r: int) -> tuple[str, ...]:
    return tuple(f"i={i},j={j}" for i in range(1, r + 1) for j in range(1, r + 1))


def _col_labels(r: int) -> tuple[str, ...]:
    return tuple(f"j={j}" for j in range(1, r + 1))


def _require_dispersed(p: np.ndarray) -> None:
    if np.sum(p * p) >= 1.0:
        raise ValueError("measure undefined for one-point marginal")


def gk_tau(tables: LagTables) -> SerialMeasureResult:
    """Goodman and Kruskal's tau.

    value = (sum(components) - sum(p^2)) / (1 - sum(p^2)), where component j
    is sum_i p_ij^2 / p_j (0 for never-observed past categories).
    """
    p = tables.marginals
    _require_dispersed(p)
    joint = tables.joint
    per_j = np.zeros(tables.n_categories)
    seen = p > 0
    per_j[seen] = np.sum(joint[:, seen] ** 2, axis=0) / p[seen]
    psq = float(np.sum(p * p))
    value = (per_j.sum() - psq) / (1.0 - psq)
    return SerialMeasureResult("gk_tau", tables.lag, float(value), per_j, _col_labels(p.size))


def gk_lambda(tables: LagTables) -> SerialMeasureResult:
    """Goodman and Kruskal's lambda.

    value = (sum(components) - max(p)) / (1 - max(p)), component j being the
    largest joint entry in column j.
    """
    p = tables.marginals
    if p.max() >= 1.0:
        raise ValueError("measure undefined for one-point marginal")
    col_max = tables.joint.max(axis=0)
    value = (col_max.sum() - p.max()) / (1.0 - p.max())
    return SerialMeasureResult("gk_lambda", tables.lag, float(value), col_max, _col_labels(p.size))


def uncertainty_coefficient(tables: LagTables) -> SerialMeasureResult:
    """Uncertainty coefficient: mutual information over marginal entropy.

    Zero joint cells contribute 0 (0 ln 0 convention).  No component
    expansion is defined for this measure.
    """
    p = tables.marginals
    _require_dispersed(p)
    joint = tables.joint
    expected = np.outer(p, p)
    nz = joint > 0
    mutual = float(np.sum(joint[nz] * np.log(joint[nz] / expected[nz])))
    nzp = p[p > 0]
    denom = -float(np.sum(nzp * np.log(nzp)))
    return SerialMeasureResult("uncertainty", tables.lag, mutual / denom)


def _phi2_cells(tables: LagTables) -> np.ndarray:
    p = tables.marginals
    expected = np.outer(p, p)
    cells = np.zeros_like(expected)
    ok = expected > 0
    cells[ok] = (tables.joint[ok] - expected[ok]) ** 2 / expected[ok]
    return cells


def pearson_measure(tables: LagTables) -> SerialMeasureResult:
    """Pearson chi-square style measure X^2.

    value = n * sum(components) with n the number of lagged pairs (T - lag);
    components are the r^2 cell terms (p_ij - p_i p_j)^2 / (p_i p_j).
    """
    cells = _phi2_cells(tables)
    n = tables.n_pairs
    value = n * float(cells.sum())
    return SerialMeasureResult("pearson", tables.lag, value, cells.ravel(), _cell_labels(tables.n_categories))


def phi2_measure(tables: LagTables) -> SerialMeasureResult:
    """Phi-square: the Pearson measure per lagged pair, value = sum(components)."""
    cells = _phi2_cells(tables)
    return SerialMeasureResult("phi2", tables.lag, float(cells.sum()), cells.ravel(), _cell_labels(tables.n_categories))


def sakoda_measure(tables: LagTables) -> SerialMeasureResult:
    """Sakoda measure sqrt(r phi2 / ((r-1)(1 + phi2))).  No components."""
    phi2 = phi2_measure(tables).value
    r = tables.n_categories
    value = float(np.sqrt(r * phi2 / ((r - 1) * (1.0 + phi2))))
    return SerialMeasureResult("sakoda", tables.lag, value)


def cramers_v(tables: LagTables) -> SerialMeasureResult:
    """Cramer's v, value = sqrt(sum(components) / (r - 1)).

    Components are the unscaled cell terms (p_ij - p_i p_j)^2 / (p_i p_j),
    the natural per-pair description of deviation from serial independence.
    """
    cells = _phi2_cells(tables)
    r = tables.n_categories
    value = float(np.sqrt(cells.sum() / (r - 1)))
    return SerialMeasureResult("cramers_v", tables.lag, value, cells.ravel(), _cell_labels(r))


def cohens_kappa(tables: LagTables) -> SerialMeasureResult:
    """Cohen's kappa, the one signed measure; value = sum(components).

    Component j is (p_jj - p_j^2) / (1 - sum(p^2)): the excess probability of
    staying in category j after ``lag`` steps, against the independence
    baseline.
    """
    p = tables.marginals
    _require_dispersed(p)
    psq = float(np.sum(p * p))
    terms = (np.diag(tables.joint) - p * p) / (1.0 - psq)
    return SerialMeasureResult("cohens_kappa", tables.lag, float(terms.sum()), terms, _col_labels(p.size))


def psi_matrix(tables: LagTables) -> PsiMatrix:
    """Correlation matrix of current vs lagged one-hot components.

    psi_ij = (p_ij - p_i p_j) / sqrt(p_i (1 - p_i) p_j (1 - p_j)), masked
    wherever a marginal is 0 or 1.  Sample values may exceed 1 in magnitude
    on short series; they are reported as computed.
    """
    p = tables.marginals
    var = p * (1.0 - p)
    denom = np.sqrt(np.outer(var, var))
    mask = np.broadcast_to((var == 0.0)[:, None], denom.shape) | np.broadcast_to(var == 0.0, denom.shape)
    num = tables.joint - np.outer(p, p)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = num / denom
    return PsiMatrix(tables.lag, np.ma.MaskedArray(np.where(mask, 0.0, values), mask=mask))


def total_correlation(tables: LagTables) -> SerialMeasureResult:
    """Mean squared entry of the psi matrix: value = sum(components^2) / r^2.

    Components are the r^2 unsquared psi values (signed correlations), the
    per-pair description used when comparing dependence structures between
    series.  Raises if any psi entry is undefined.
    """
    psi = psi_matrix(tables)
    if psi.values.mask.any():
        raise ValueError("total correlation undefined: a category has degenerate marginal probability")
    values = np.asarray(psi.values)
    r = tables.n_categories
    return SerialMeasureResult(
        "total_correlation",
        tables.lag,
        float(np.sum(values * values) / r**2),
        values.ravel(),
        _cell_labels(r),
    )


MEASURE_FUNCTIONS = {
    "gk_tau": gk_tau,
    "gk_lambda": gk_lambda,
    "uncertainty": uncertainty_coefficient,
    "pearson": pearson_measure,
    "phi2": phi2_measure,
    "sakoda": sakoda_measure,
    "cramers_v": cramers_v,
    "cohens_kappa": cohens_kappa,
    "total_correlation": total_correlation,
}
