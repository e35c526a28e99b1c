"""Seeded generators for heavy-tailed test models.

Three model families are provided:

``AsympIndep``
    Gaussian copula with Pareto(1) margins on the first ``s_star``
    coordinates and absolute standard normals elsewhere. The extremal mass
    sits on the ``s_star`` axes.
``AsympDep``
    Clusters of one, two or three coordinates that share a Pareto(1) driver
    (shifted by independent Exp(1) variables), padded with Exp(1) noise.
``AxisOracle``
    ``X = R * e_J`` with ``R`` Pareto(1) and ``J`` drawn from ``weights``;
    its spectral measure is exactly the given discrete law on the axes.

All generators are pure functions of ``(spec, n, seed)``. Random streams come
from :class:`numpy.random.SeedSequence` feeding the counter-based Philox bit
generator, so derived streams do not depend on execution order.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .tally import DirectionKey

__all__ = [
    "AsympIndep",
    "AsympDep",
    "AxisOracle",
    "ModelSpec",
    "TrueDirections",
    "make_rng",
    "correlation_matrix",
    "gen_asymp_indep",
    "gen_asymp_dep",
    "gen_axis_oracle",
    "generate",
    "true_direction_weights",
    "spec_from_dict",
    "spec_to_dict",
]

MAX_FACTOR_ATTEMPTS = 10


@dataclass(frozen=True)
class AsympIndep:
    """Gaussian-copula model with ``s_star`` Pareto(1) coordinates.

    ``correlation="gram"`` draws the copula correlation from a uniform random
    Gram matrix (see :func:`correlation_matrix`); ``"identity"`` uses
    independent Gaussians, which has the same spectral measure.
    """

    s_star: int
    d: int
    correlation: str = "gram"

    def __post_init__(self):
        if not 1 <= self.s_star <= self.d:
            raise ValueError(f"need 1 <= s_star <= d, got s_star={self.s_star}, d={self.d}")
        if self.correlation not in ("gram", "identity"):
            raise ValueError(f"correlation must be 'gram' or 'identity', got {self.correlation!r}")


@dataclass(frozen=True)
class AsympDep:
    s1: int
    s2: int
    s3: int
    d: int

    def __post_init__(self):
        if min(self.s1, self.s2, self.s3) < 0:
            raise ValueError("cluster counts must be nonnegative")
        if self.s1 + self.s2 + self.s3 < 1:
            raise ValueError("need at least one cluster")
        if self.d < self.s1 + 2 * self.s2 + 3 * self.s3:
            raise ValueError(
                f"d={self.d} is smaller than s1 + 2*s2 + 3*s3 = "
                f"{self.s1 + 2 * self.s2 + 3 * self.s3}"
            )

    @property
    def s_star(self) -> int:
        return self.s1 + self.s2 + self.s3


@dataclass(frozen=True)
class AxisOracle:
    weights: tuple[float, ...]
    d: int

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", tuple(float(x) for x in w))
        if w.ndim != 1 or w.size == 0 or w.size > self.d:
            raise ValueError("weights must be a nonempty vector of length <= d")
        if np.any(~np.isfinite(w)) or np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
            raise ValueError("weights must be nonnegative and sum to 1")

    @property
    def s_star(self) -> int:
        return int(np.count_nonzero(self.weights))


ModelSpec = AsympIndep | AsympDep | AxisOracle


@dataclass(frozen=True)
class TrueDirections:
    entries: tuple[tuple[DirectionKey, float], ...]

    def __post_init__(self):
        keys = [k for k, _ in self.entries]
        w = np.array([w for _, w in self.entries], dtype=float)
        if len(set(keys)) != len(keys):
            raise ValueError("direction keys must be distinct")
        if w.size == 0 or np.any(w <= 0) or abs(w.sum() - 1) > 1e-12:
            raise ValueError("weights must be positive and sum to 1")

    def sorted_weights(self) -> np.ndarray:
        return np.sort(np.array([w for _, w in self.entries]))[::-1]


def _seed_sequence(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


def _child(ss: np.random.SeedSequence, *key: int) -> np.random.SeedSequence:
    # explicit spawn keys: SeedSequence.spawn is stateful and would make
    # repeated calls on the same object diverge
    return np.random.SeedSequence(ss.entropy, spawn_key=tuple(ss.spawn_key) + key)


def make_rng(seed, *key: int) -> np.random.Generator:
    """A Philox generator for ``seed`` extended by the spawn key ``key``."""
    ss = _seed_sequence(seed)
    if key:
        ss = _child(ss, *key)
    return np.random.Generator(np.random.Philox(ss))


def correlation_matrix(s_star: int, seed):
    """Draw the copula correlation and its Cholesky factor.

    ``H`` has i.i.d. U(0,1) entries and ``Sigma = D^-1/2 H'H D^-1/2`` with
    ``D = diag(H'H)``, so ``Sigma`` has a unit diagonal. Up to
    :data:`MAX_FACTOR_ATTEMPTS` independent draws of ``H`` are tried.
    """
    ss = _seed_sequence(seed)
    for attempt in range(MAX_FACTOR_ATTEMPTS):
        rng = make_rng(ss, 0, attempt)
        H = rng.random((s_star, s_star))
        G = H.T @ H
        scale = 1.0 / np.sqrt(np.diag(G))
        sigma = G * scale[:, None] * scale[None, :]
        sigma = 0.5 * (sigma + sigma.T)
        np.fill_diagonal(sigma, 1.0)
        try:
            L = np.linalg.cholesky(sigma)
        except np.linalg.LinAlgError:
            continue
        return sigma, L
    raise np.linalg.LinAlgError(
        f"correlation matrix not positive definite after {MAX_FACTOR_ATTEMPTS} draws"
    )


def _check_n(n):
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    return int(n)


def _pareto(rng, size):
    return 1.0 / (1.0 - rng.random(size))


def gen_asymp_indep(spec: AsympIndep, n: int, seed) -> np.ndarray:
    n = _check_n(n)
    ss = _seed_sequence(seed)
    rng = make_rng(ss, 1)
    X = np.empty((n, spec.d))
    Y = rng.standard_normal((n, spec.s_star))
    if spec.correlation == "gram":
        _, L = correlation_matrix(spec.s_star, ss)
        Y = Y @ L.T
    # 1 / (1 - Phi(y)) through the upper tail directly
    X[:, : spec.s_star] = 1.0 / ndtr(-Y)
    X[:, spec.s_star :] = np.abs(rng.standard_normal((n, spec.d - spec.s_star)))
    return X


def gen_asymp_dep(spec: AsympDep, n: int, seed) -> np.ndarray:
    n = _check_n(n)
    rng = make_rng(seed, 1)
    s1, s2, s3 = spec.s1, spec.s2, spec.s3
    X = np.empty((n, spec.d))
    X[:, :s1] = _pareto(rng, (n, s1))

    P = _pareto(rng, (n, s2))
    E = rng.standard_exponential((n, s2))
    X[:, s1 : s1 + 2 * s2 : 2] = P
    X[:, s1 + 1 : s1 + 2 * s2 : 2] = P + E

    off = s1 + 2 * s2
    P = _pareto(rng, (n, s3))
    E = rng.standard_exponential((n, s3, 2))
    end = off + 3 * s3
    X[:, off:end:3] = P
    X[:, off + 1 : end : 3] = P + E[:, :, 0]
    X[:, off + 2 : end : 3] = P + E[:, :, 1]

    off += 3 * s3
    X[:, off:] = rng.standard_exponential((n, spec.d - off))
    return X


def gen_axis_oracle(spec: AxisOracle, n: int, seed) -> np.ndarray:
    n = _check_n(n)
    rng = make_rng(seed, 1)
    w = np.asarray(spec.weights)
    J = rng.choice(w.size, size=n, p=w)
    X = np.zeros((n, spec.d))
    X[np.arange(n), J] = _pareto(rng, n)
    return X


def generate(spec: ModelSpec, n: int, seed) -> np.ndarray:
    """Dispatch to the generator for ``spec``."""
    if isinstance(spec, AsympIndep):
        return gen_asymp_indep(spec, n, seed)
    if isinstance(spec, AsympDep):
        return gen_asymp_dep(spec, n, seed)
    if isinstance(spec, AxisOracle):
        return gen_axis_oracle(spec, n, seed)
    raise TypeError(f"unknown model spec {spec!r}")


def true_direction_weights(spec: ModelSpec) -> TrueDirections:
    """Limiting direction probabilities of a model.

    For ``AsympDep`` a cluster of size m carries a weight proportional to m,
    because the tail of its L1 norm is roughly ``m / t``.
    """
    if isinstance(spec, AsympIndep):
        return TrueDirections(tuple(((j,), 1.0 / spec.s_star) for j in range(1, spec.s_star + 1)))
    if isinstance(spec, AxisOracle):
        return TrueDirections(
            tuple(((j + 1,), w) for j, w in enumerate(spec.weights) if w > 0)
        )
    if isinstance(spec, AsympDep):
        total = spec.s1 + 2 * spec.s2 + 3 * spec.s3
        entries = []
        start = 1
        for size, count in ((1, spec.s1), (2, spec.s2), (3, spec.s3)):
            for _ in range(count):
                entries.append((tuple(range(start, start + size)), size / total))
                start += size
        return TrueDirections(tuple(entries))
    raise TypeError(f"unknown model spec {spec!r}")


_KINDS = {"asymp_indep": AsympIndep, "asymp_dep": AsympDep, "axis_oracle": AxisOracle}


def spec_to_dict(spec: ModelSpec) -> dict:
    for name, cls in _KINDS.items():
        if isinstance(spec, cls):
            out = {"kind": name}
            out.update({f: getattr(spec, f) for f in cls.__dataclass_fields__})
            if "weights" in out:
                out["weights"] = list(out["weights"])
            return out
    raise TypeError(f"unknown model spec {spec!r}")


def spec_from_dict(data: dict) -> ModelSpec:
    """Build a model spec from ``{"kind": ..., **params}``."""
    data = dict(data)
    kind = data.pop("kind", None)
    if kind not in _KINDS:
        raise ValueError(f"model kind must be one of {sorted(_KINDS)}, got {kind!r}")
    cls = _KINDS[kind]
    fields = set(cls.__dataclass_fields__)
    missing = {
        f for f, info in cls.__dataclass_fields__.items()
        if info.default is dataclasses.MISSING
    } - set(data)
    extra = set(data) - fields
    if missing:
        raise KeyError(f"model is missing {sorted(missing)[0]!r}")
    if extra:
        raise KeyError(f"unknown model key {sorted(extra)[0]!r}")
    if kind == "axis_oracle":
        data["weights"] = tuple(data["weights"])
    return cls(**data)
