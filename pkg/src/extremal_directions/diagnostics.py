"""Empirical high-dimensional diagnostics and consistency functions.

For a reference size ``s_ref`` the counts beyond it are treated as bias
directions. Their mean count estimates ``mu`` and the first of them, divided
by that mean, estimates the gap ratio ``q``. The three ``g_*`` functions are
positive exactly where AIC, QAIC and MSEIC select the true size in the limit
(for MSEIC: positivity is sufficient).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

__all__ = ["ConsistencyDiagnostics", "g_aic", "g_qaic", "g_mseic", "diagnostics"]


def _check_domain(q, mu=1.0):
    if not (math.isfinite(q) and q >= 1):
        raise ValueError(f"q must be a finite number >= 1, got {q!r}")
    if not (math.isfinite(mu) and mu >= 1):
        raise ValueError(f"mu must be a finite number >= 1, got {mu!r}")


def g_aic(q: float, mu: float) -> float:
    """``q (1 - log q) - 1 + 1/mu``; AIC is consistent iff positive."""
    _check_domain(q, mu)
    return q * (1.0 - math.log(q)) - 1.0 + 1.0 / mu


def g_qaic(q: float) -> float:
    """``log q - q + 2``; root above 1 at q ~ 3.146."""
    _check_domain(q)
    return math.log(q) - q + 2.0


def g_mseic(q: float, mu: float) -> float:
    """``2 - (q - 1)^2 mu``; MSEIC is consistent if positive."""
    _check_domain(q, mu)
    return 2.0 - (q - 1.0) ** 2 * mu


@dataclass(frozen=True)
class ConsistencyDiagnostics:
    s_ref: int
    c_hat: float
    mu_hat: float
    q_hat: float
    g_aic: float
    g_qaic: float
    g_mseic: float

    def to_dict(self) -> dict:
        return asdict(self)


def diagnostics(tally, s_ref: int) -> ConsistencyDiagnostics:
    """Plug-in estimates of ``c``, ``mu`` and ``q`` given a reference size.

    ``c_hat = s_hat / k``, ``mu_hat`` is the mean of the counts after
    position ``s_ref`` and ``q_hat = T_{s_ref+1} / mu_hat``. The g-functions
    are evaluated at ``max(q_hat, 1)`` and ``max(mu_hat, 1)``; ``q_hat`` and
    ``mu_hat`` themselves are reported unclamped.

    >>> d = diagnostics([9, 2, 1, 1, 1], 1)
    >>> d.mu_hat, d.q_hat
    (1.25, 1.6)
    """
    T = np.asarray(getattr(tally, "ordered", tally), dtype=np.int64)
    r = T.size
    if not 1 <= s_ref < r:
        raise ValueError(f"s_ref must lie in [1, {r - 1}], got {s_ref}")
    k = int(T.sum())
    trailing = T[s_ref:]
    mu_hat = float(trailing.sum()) / trailing.size
    q_hat = float(trailing[0]) / mu_hat
    q_g = max(q_hat, 1.0)
    mu_g = max(mu_hat, 1.0)
    return ConsistencyDiagnostics(
        s_ref=int(s_ref),
        c_hat=r / k,
        mu_hat=mu_hat,
        q_hat=q_hat,
        g_aic=g_aic(q_g, mu_g),
        g_qaic=g_qaic(q_g),
        g_mseic=g_mseic(q_g, mu_g),
    )
