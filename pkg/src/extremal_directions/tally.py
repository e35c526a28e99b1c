"""Counting the observed extremal directions of a sample.

The ``k`` rows with the largest L1 norm are scaled by the ``(k+1)``-th largest
norm, projected onto the simplex, and grouped by the support of the
projection. Direction keys are tuples of 1-based coordinate indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .projection import project_rows

__all__ = [
    "DirectionKey",
    "DirectionTally",
    "as_data_matrix",
    "l1_norms",
    "select_extremes",
    "tally_directions",
    "tally_from_counts",
    "normalized_conditional",
]

DirectionKey = tuple[int, ...]


@dataclass(frozen=True)
class DirectionTally:
    """Counts of observed directions among the ``k`` largest observations.

    Attributes
    ----------
    k : int
        Number of extremes used.
    threshold : float
        The ``(k+1)``-th largest L1 norm, used to scale the extremes.
    counts : Mapping[DirectionKey, int]
        Number of projected extremes per direction.
    keys : tuple of DirectionKey
        Directions in the order of ``ordered``: by count descending, ties by
        lexicographically smallest key.
    ordered : ndarray of int
        Descending counts ``T_1 >= ... >= T_s_hat``.
    """

    k: int
    threshold: float
    counts: Mapping[DirectionKey, int]
    keys: tuple[DirectionKey, ...]
    ordered: np.ndarray = field(repr=False)

    @property
    def s_hat(self) -> int:
        return len(self.ordered)

    def top(self, m: int | None = None) -> list[tuple[DirectionKey, int]]:
        """The ``m`` most frequent directions with their counts."""
        m = self.s_hat if m is None else m
        return [(key, self.counts[key]) for key in self.keys[:m]]


def as_data_matrix(X) -> np.ndarray:
    """Validate and return ``X`` as a float array of nonnegative observations."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError(f"data matrix must be 2-d, got shape {X.shape}")
    n, d = X.shape
    if n < 2 or d < 1:
        raise ValueError(f"need at least 2 rows and 1 column, got {X.shape}")
    bad = ~np.isfinite(X) | (X < 0)
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise ValueError(
            f"entry at row {i + 1}, column {j + 1} is {X[i, j]!r}; "
            "entries must be finite and nonnegative"
        )
    return X


def l1_norms(X) -> np.ndarray:
    return np.asarray(X, dtype=float).sum(axis=1)


def select_extremes(X, k: int, norms: np.ndarray | None = None):
    """Indices of the ``k`` rows with largest L1 norm and the threshold.

    Ties in the norm are resolved in favour of the smaller row index. The
    threshold is the ``(k+1)``-th largest norm.

    Returns
    -------
    idx : ndarray of int
        0-based row indices, largest norm first.
    t : float
    """
    if norms is None:
        norms = l1_norms(X)
    n = len(norms)
    k = int(k)
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in [1, {n - 1}], got {k}")
    order = np.argsort(-norms, kind="stable")
    t = float(norms[order[k]])
    if not t > 0:
        raise ValueError("the (k+1)-th largest norm is zero; sample is degenerate")
    return order[:k], t


def _order_keys(counts: Mapping[DirectionKey, int]) -> list[DirectionKey]:
    return sorted(counts, key=lambda key: (-counts[key], key))


def tally_from_counts(counts: Mapping[DirectionKey, int], threshold: float = float("nan")) -> DirectionTally:
    """Build a tally from an explicit direction -> count map."""
    counts = {tuple(int(i) for i in key): int(c) for key, c in counts.items()}
    if not counts:
        raise ValueError("empty tally")
    if any(c < 1 for c in counts.values()):
        raise ValueError("counts must be positive")
    keys = _order_keys(counts)
    ordered = np.array([counts[key] for key in keys], dtype=np.int64)
    return DirectionTally(
        k=int(ordered.sum()),
        threshold=float(threshold),
        counts=MappingProxyType(counts),
        keys=tuple(keys),
        ordered=ordered,
    )


def tally_directions(X, k: int) -> DirectionTally:
    """Tally the supports of the projected ``k`` largest observations.

    Examples
    --------
    >>> X = [[10, 0, 0], [0, 8, 8], [1, 1, 0], [0.5, 0, 0], [0.2, 0.1, 0]]
    >>> tally = tally_directions(X, 2)
    >>> dict(tally.counts), tally.threshold
    ({(1,): 1, (2, 3): 1}, 2.0)
    """
    X = as_data_matrix(X)
    idx, t = select_extremes(X, k)
    extremes = X[idx] / t
    if np.any(~np.any(extremes > 0, axis=1)):
        raise RuntimeError("selected an all-zero row")
    mask = project_rows(extremes) > 0

    patterns, freq = np.unique(mask, axis=0, return_counts=True)
    counts = {
        tuple(int(i) + 1 for i in np.flatnonzero(p)): int(c)
        for p, c in zip(patterns, freq)
    }
    return tally_from_counts(counts, threshold=t)


def normalized_conditional(tally: DirectionTally, s: int) -> np.ndarray:
    """Relative frequencies of the ``s`` most frequent directions."""
    if not 1 <= s <= tally.s_hat:
        raise ValueError(f"s must lie in [1, {tally.s_hat}], got {s}")
    head = tally.ordered[:s].astype(float)
    return head / head.sum()
