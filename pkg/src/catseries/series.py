"""Alphabets, integer-coded categorical series and lagged count tables.

A nominal series over ``r`` categories is stored as a vector of 1-based
integer codes: the i-th symbol of its alphabet has code ``i``.  Symbols are
interned to codes once, when a series is constructed; every statistic in the
package operates on the integer codes and on the count tables built here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Alphabet",
    "CategoricalSeries",
    "LagTables",
    "binarize",
    "marginal_probabilities",
    "lag_tables",
    "conditional_probabilities",
]


@dataclass(frozen=True)
class Alphabet:
    """Ordered collection of distinct category labels.

    The order is significant: ``symbols[i - 1]`` is the category with code
    ``i``.  Declaring a label that never occurs in a particular series is
    allowed and meaningful (the category then has estimated probability 0).
    """

    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        symbols = tuple(str(s) for s in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if len(symbols) < 2:
            raise ValueError("need at least two categories")
        if len(set(symbols)) != len(symbols):
            raise ValueError("duplicate category labels in alphabet")
        object.__setattr__(self, "_lookup", {s: i + 1 for i, s in enumerate(symbols)})

    @property
    def size(self) -> int:
        return len(self.symbols)

    def code(self, symbol: str) -> int:
        """1-based code of ``symbol``; raises for unknown labels."""
        try:
            return self._lookup[symbol]  # type: ignore[attr-defined]
        except KeyError:
            raise ValueError(f"unknown symbol {symbol!r}; not in alphabet {self.symbols}") from None

    def label(self, code: int) -> str:
        if not 1 <= code <= self.size:
            raise ValueError(f"code {code} outside 1..{self.size}")
        return self.symbols[code - 1]

    @classmethod
    def of_size(cls, r: int) -> "Alphabet":
        """Alphabet with labels '1', '2', ..., 'r'."""
        return cls(tuple(str(i) for i in range(1, r + 1)))


@dataclass(frozen=True, eq=False)
class CategoricalSeries:
    """A length-T realization of a categorical process, as 1-based codes."""

    codes: np.ndarray
    alphabet: Alphabet

    def __post_init__(self) -> None:
        codes = np.asarray(self.codes, dtype=np.int64)
        if codes.ndim != 1:
            raise ValueError("codes must be one-dimensional")
        if codes.size == 0:
            raise ValueError("empty series")
        r = self.alphabet.size
        if codes.min() < 1 or codes.max() > r:
            raise ValueError(f"codes must lie in 1..{r}")
        codes.flags.writeable = False
        object.__setattr__(self, "codes", codes)

    def __len__(self) -> int:
        return int(self.codes.size)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def n_categories(self) -> int:
        return self.alphabet.size

    @classmethod
    def from_symbols(cls, symbols: Iterable[str], alphabet: Alphabet) -> "CategoricalSeries":
        codes = np.fromiter((alphabet.code(s) for s in symbols), dtype=np.int64)
        return cls(codes, alphabet)

    def to_symbols(self) -> list[str]:
        labels = self.alphabet.symbols
        return [labels[c - 1] for c in self.codes]


def binarize(series: CategoricalSeries) -> np.ndarray:
    """One-hot representation of a series.

    Returns a (T, r) array whose row t is the unit vector with a 1 at the
    position of ``codes[t]``.  ``argmax`` along rows recovers the 0-based
    codes, so the mapping is invertible.
    """
    eye = np.eye(series.alphabet.size)
    return eye[series.codes - 1]


def category_counts(series: CategoricalSeries) -> np.ndarray:
    """Occurrences of each category over the whole series, length r."""
    return np.bincount(series.codes, minlength=series.alphabet.size + 1)[1:]


def marginal_probabilities(series: CategoricalSeries) -> np.ndarray:
    """Relative frequency of each category, length r, summing to 1."""
    return category_counts(series) / len(series)


@dataclass(frozen=True, eq=False)
class LagTables:
    """Marginal and lagged-joint frequency tables of one series.

    ``joint[i - 1, j - 1]`` estimates the probability that the series equals
    ``i`` now and ``j`` exactly ``lag`` steps earlier; rows index the current
    value, columns the past one.  Marginals are divided by the full length T
    while the joint table is divided by the number of observed pairs T - lag,
    so joint rows do not sum exactly to the marginals in finite samples.

    ``counts``/``pair_counts`` hold the raw integer counts when the tables
    were built from a series; tables built directly from probabilities (e.g.
    exact population tables in tests) carry ``None`` there.
    """

    lag: int
    T: int
    marginals: np.ndarray
    joint: np.ndarray
    counts: np.ndarray | None = None
    pair_counts: np.ndarray | None = None

    def __post_init__(self) -> None:
        p = np.asarray(self.marginals, dtype=float)
        joint = np.asarray(self.joint, dtype=float)
        r = p.size
        if joint.shape != (r, r):
            raise ValueError("joint table must be r x r")
        if self.lag < 0:
            raise ValueError("lag must be non-negative")
        if np.any(p < 0) or np.any(p > 1) or np.any(joint < 0) or np.any(joint > 1):
            raise ValueError("probabilities must lie in [0, 1]")
        if abs(p.sum() - 1.0) > 1e-9 or abs(joint.sum() - 1.0) > 1e-9:
            raise ValueError("probability tables must sum to 1")
        p.flags.writeable = False
        joint.flags.writeable = False
        object.__setattr__(self, "marginals", p)
        object.__setattr__(self, "joint", joint)
        if self.counts is not None:
            n = np.asarray(self.counts, dtype=np.int64)
            nij = np.asarray(self.pair_counts, dtype=np.int64)
            if n.sum() != self.T or nij.sum() != self.T - self.lag:
                raise ValueError("count tables inconsistent with series length")
            n.flags.writeable = False
            nij.flags.writeable = False
            object.__setattr__(self, "counts", n)
            object.__setattr__(self, "pair_counts", nij)

    @property
    def n_categories(self) -> int:
        return int(self.marginals.size)

    @property
    def n_pairs(self) -> int:
        """Number of lagged pairs behind the joint table."""
        return self.T - self.lag

    @classmethod
    def from_series(cls, series: CategoricalSeries, lag: int) -> "LagTables":
        return lag_tables(series, lag)

    @classmethod
    def from_probabilities(
        cls,
        marginals: Sequence[float],
        joint: np.ndarray,
        lag: int = 1,
        n_pairs: int = 1,
    ) -> "LagTables":
        """Tables fixed directly from probabilities (no underlying counts)."""
        return cls(lag=lag, T=lag + n_pairs, marginals=np.asarray(marginals, float), joint=np.asarray(joint, float))


def lag_tables(series: CategoricalSeries, lag: int) -> LagTables:
    """Count-based marginal and lag-``lag`` joint tables for a series.

    Pairs (current, past) are enumerated for t = lag+1 .. T; at lag 0 the
    joint table is diagonal with the marginal frequencies.
    """
    T = len(series)
    if lag < 0:
        raise ValueError("lag must be non-negative")
    if lag >= T:
        raise ValueError("lag exceeds series length")
    r = series.alphabet.size
    counts = category_counts(series)
    rows = series.codes[lag:] - 1
    cols = series.codes[: T - lag] - 1
    pair_counts = np.bincount(rows * r + cols, minlength=r * r).reshape(r, r)
    return LagTables(
        lag=lag,
        T=T,
        marginals=counts / T,
        joint=pair_counts / (T - lag),
        counts=counts,
        pair_counts=pair_counts,
    )


def conditional_probabilities(tables: LagTables) -> np.ma.MaskedArray:
    """Lagged conditional table: entry (i, j) estimates P(now = i | past = j).

    Each column j is the joint column divided by the marginal of j.  Columns
    whose category never occurs are masked rather than filled with 0 or NaN;
    consumers must treat masked entries as undefined.  Because the marginal
    uses the full series while the joint uses only overlapping pairs, defined
    columns sum to 1 only up to an O(lag/T) edge effect (exact at lag 0).
    """
    p = tables.marginals
    joint = tables.joint
    r = tables.n_categories
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = joint / p[np.newaxis, :]
    mask = np.broadcast_to(p == 0.0, (r, r))
    return np.ma.MaskedArray(np.where(mask, 0.0, cond), mask=mask)
