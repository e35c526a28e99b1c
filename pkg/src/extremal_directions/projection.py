"""Euclidean projection onto the L1 unit simplex.

The projection of a nonnegative vector ``v`` is the unique minimiser of
``||w - v||_2^2`` over ``{w >= 0, sum(w) = 1}``. It is computed with the
sort-and-threshold rule, which yields exact zeros below the threshold. Those
zeros are what makes the projected angular component sparse.
"""

from __future__ import annotations

import numpy as np

__all__ = ["project_simplex", "project_rows", "support"]


def _check_input(v: np.ndarray) -> None:
    if v.size == 0 or v.shape[-1] == 0:
        raise ValueError("cannot project an empty vector")
    if not np.all(np.isfinite(v)):
        raise ValueError("input contains NaN or infinite entries")
    if np.any(v < 0):
        raise ValueError("input contains negative entries")
    if np.any(~np.any(v > 0, axis=-1)):
        raise ValueError("cannot project the zero vector")


def project_rows(V) -> np.ndarray:
    """Project every row of a nonnegative matrix onto the unit simplex.

    Parameters
    ----------
    V : array_like, shape (m, d)
        Nonnegative, finite rows; none may be identically zero.

    Returns
    -------
    ndarray, shape (m, d)
        Row-wise projections. Coordinates at or below the threshold are
        exactly ``0.0``.
    """
    V = np.asarray(V, dtype=float)
    if V.ndim != 2:
        raise ValueError("expected a 2-d array")
    _check_input(V)
    m, d = V.shape

    u = -np.sort(-V, axis=1)
    css = np.cumsum(u, axis=1)
    j = np.arange(1, d + 1, dtype=float)
    # strict inequality: coordinates tied with the threshold are dropped
    active = u - (css - 1.0) / j > 0
    rho = d - np.argmax(active[:, ::-1], axis=1)
    rows = np.arange(m)
    theta = (css[rows, rho - 1] - 1.0) / rho
    W = np.maximum(V - theta[:, None], 0.0)
    # v - theta cancels for large entries; rescale so the sum is 1 to rounding.
    # Summing the sorted values keeps the result permutation invariant
    W /= np.sort(W, axis=1).sum(axis=1)[:, None]

    # rows already on the simplex (up to rounding) are fixed points; this keeps
    # the projection idempotent in floating point
    on_simplex = np.abs(css[:, -1] - 1.0) <= 4 * d * np.finfo(float).eps
    if np.any(on_simplex):
        W[on_simplex] = V[on_simplex]
    return W


def project_simplex(v) -> np.ndarray:
    """Project a nonnegative vector onto the unit simplex.

    >>> project_simplex([0.8, 0.4])
    array([0.7, 0.3])
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise ValueError("expected a 1-d vector")
    return project_rows(v[None, :])[0]


def support(w) -> tuple[int, ...]:
    """Return the 1-based indices of the strictly positive entries of ``w``.

    The result is the direction key of the simplex face containing ``w``.
    """
    w = np.asarray(w, dtype=float)
    idx = np.flatnonzero(w > 0)
    if idx.size == 0:
        raise ValueError("a simplex point has nonempty support")
    return tuple(int(i) + 1 for i in idx)
