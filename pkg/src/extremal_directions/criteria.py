"""Information criteria for the number of extremal directions.

Each criterion is evaluated on the ordered counts ``T_1 >= ... >= T_r`` of a
tally (``r`` observed directions, ``k`` extremes) for a candidate size ``s``
with ``1 <= s < r``. The model for size ``s`` keeps the ``s`` leading counts
and pools the remaining ``r - s`` directions at their average frequency
rho_s = sum_{j>s} T_j / (k (r - s)).

Factorials enter through ``log(x!) = gammaln(x + 1)``; every constant term of
the formulas is kept so absolute values are comparable across criteria.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .tally import DirectionTally

__all__ = [
    "CRITERIA",
    "ICProfile",
    "bic_u",
    "bic_l",
    "aic",
    "qaic",
    "mseic",
    "criterion_values",
    "evaluate_profiles",
]

logger = logging.getLogger(__name__)

CRITERIA = ("AIC", "BICU", "BICL", "QAIC", "MSEIC")
LOG_2PI = np.log(2 * np.pi)


@dataclass(frozen=True)
class ICProfile:
    """Values of one criterion over ``s = 1..q_eff`` and the selected size."""

    criterion: str
    values: np.ndarray
    selected: int

    @property
    def q_eff(self) -> int:
        return len(self.values)

    def value(self, s: int) -> float:
        return float(self.values[s - 1])


class _Parts:
    """Per-tally sums shared by all criteria, vectorised over ``s``."""

    def __init__(self, tally):
        T = np.asarray(getattr(tally, "ordered", tally), dtype=np.int64)
        if T.ndim != 1 or T.size == 0 or np.any(T < 1):
            raise ValueError("ordered counts must be a nonempty vector of positive integers")
        if np.any(np.diff(T) > 0):
            raise ValueError("ordered counts must be non-increasing")
        r = T.size
        if r < 2:
            raise ValueError("degenerate tally: fewer than two observed directions")
        self.T = T
        self.r = r
        self.k = int(T.sum())
        logk = np.log(self.k)
        self.logk = logk
        self.log_fact = float(-gammaln(self.k + 1) + gammaln(T + 1.0).sum())

        Tf = T.astype(float)
        # head sums over j <= s, s = 1..r-1
        self.head_xlogx = np.cumsum(Tf * (np.log(Tf) - logk))[:-1]
        self.head_logp = np.cumsum(np.log(Tf) - logk)[:-1]
        # tail sums over j > s, exact in integers
        self.tail = (self.k - np.cumsum(T))[:-1]
        self.tail_sq = (int((T * T).sum()) - np.cumsum(T * T))[:-1]
        self.s = np.arange(1, r)
        self.m = r - self.s
        self.log_rho = np.log(self.tail.astype(float)) - logk - np.log(self.m.astype(float))

    def _index(self, s):
        s = np.asarray(s)
        if np.any(s < 1) or np.any(s >= self.r):
            raise ValueError(f"s must lie in [1, {self.r - 1}] for a tally with {self.r} directions")
        return s - 1

    def fit(self, i):
        """The s-dependent likelihood part shared by AIC and the BICs."""
        return -self.head_xlogx[i] - self.log_rho[i] * self.tail[i]

    def bic_u(self, s):
        i = self._index(s)
        s = self.s[i]
        pen = 2 * s * self.logk + s * (np.log(self.r) - LOG_2PI - np.log(self.m[i].astype(float)))
        return 2 * self.log_fact + 2 * self.fit(i) + pen

    def bic_l(self, s):
        i = self._index(s)
        s = self.s[i]
        pen = s * self.logk + s * (self.logk - LOG_2PI - np.log(float(self.T[0])))
        return 2 * self.log_fact + 2 * self.fit(i) + pen

    def aic(self, s):
        i = self._index(s)
        return self.log_fact + self.fit(i) + self.s[i]

    def qaic(self, s):
        i = self._index(s)
        r = self.r
        return r * LOG_2PI + r * self.logk + self.head_logp[i] + self.m[i] * self.log_rho[i] + r + self.s[i]

    def mseic(self, s):
        # (k / rho) * sum_{j>s} (T_j/k - rho)^2 reduces to
        # ((r - s) * sum T_j^2 - (sum T_j)^2) / sum T_j over the tail
        i = self._index(s)
        num = self.m[i] * self.tail_sq[i] - self.tail[i] ** 2
        return num / self.tail[i] + 2 * self.s[i]


_METHODS = {"AIC": "aic", "BICU": "bic_u", "BICL": "bic_l", "QAIC": "qaic", "MSEIC": "mseic"}


def _scalar(name, tally, s):
    if isinstance(s, (bool, np.bool_)) or int(s) != s:
        raise TypeError(f"s must be an integer, got {s!r}")
    return float(getattr(_Parts(tally), _METHODS[name])(int(s)))


def bic_u(tally, s: int) -> float:
    """BIC built on the upper bound of the posterior probability."""
    return _scalar("BICU", tally, s)


def bic_l(tally, s: int) -> float:
    """BIC built on the lower bound of the posterior probability."""
    return _scalar("BICL", tally, s)


def aic(tally, s: int) -> float:
    """Akaike criterion for a multinomial model with ``s`` free cells.

    ``tally`` may be a :class:`DirectionTally` or a descending count vector.

    >>> round(aic([4, 3, 1, 1, 1], 1), 3)
    5.913
    """
    return _scalar("AIC", tally, s)


def qaic(tally, s: int) -> float:
    """Quasi-Akaike criterion (Gaussian approximation of the counts)."""
    return _scalar("QAIC", tally, s)


def mseic(tally, s: int) -> float:
    """Mean squared error criterion.

    >>> mseic([4, 3, 1, 1, 1], 1)
    4.0
    """
    return _scalar("MSEIC", tally, s)


def criterion_values(tally, criterion: str, q_n: int) -> np.ndarray:
    """Values of ``criterion`` for ``s = 1..min(q_n, r - 1)``."""
    parts = _Parts(tally)
    q_eff = min(int(q_n), parts.r - 1)
    return getattr(parts, _METHODS[criterion])(np.arange(1, q_eff + 1)).astype(float)


def evaluate_profiles(
    tally: DirectionTally | np.ndarray,
    q_n: int,
    criteria=CRITERIA,
    warn: bool = True,
) -> dict[str, ICProfile]:
    """Evaluate the criteria over all candidate sizes and select by argmin.

    Candidate sizes are ``s = 1..min(q_n, r - 1)``; ties go to the smallest
    ``s``.

    Parameters
    ----------
    tally : DirectionTally or array_like
        Tally, or its descending count vector.
    q_n : int
        Number of candidate models.
    criteria : iterable of str
        Subset of :data:`CRITERIA`.
    warn : bool
        Log a warning when ``q_n >= sqrt(r)``, where the candidate range is
        too large relative to the number of observed directions for the
        consistency results to apply.
    """
    if int(q_n) < 1:
        raise ValueError(f"q_n must be >= 1, got {q_n}")
    unknown = set(criteria) - set(CRITERIA)
    if unknown:
        raise ValueError(f"unknown criteria: {sorted(unknown)}")
    parts = _Parts(tally)
    if warn and q_n >= np.sqrt(parts.r):
        logger.warning(
            "q_n=%d is not small against sqrt(s_hat)=%.1f; consistency guarantees are strained",
            q_n,
            np.sqrt(parts.r),
        )
    q_eff = min(int(q_n), parts.r - 1)
    s = np.arange(1, q_eff + 1)
    profiles = {}
    for name in criteria:
        values = getattr(parts, _METHODS[name])(s).astype(float)
        profiles[name] = ICProfile(name, values, int(np.argmin(values)) + 1)
    return profiles
