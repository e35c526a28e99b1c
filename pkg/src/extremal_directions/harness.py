"""Replicated Monte Carlo experiments.

One replication runs generate -> tally -> criteria -> diagnostics ->
Hellinger distance. Replication ``i`` draws from the seed sequence
``SeedSequence(master_seed, spawn_key=(i,))``, so results do not depend on
how replications are scheduled across workers.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .criteria import CRITERIA, evaluate_profiles
from .diagnostics import ConsistencyDiagnostics, diagnostics
from .models import ModelSpec, TrueDirections, generate, spec_from_dict, spec_to_dict, true_direction_weights
from .tally import normalized_conditional, tally_directions

__all__ = [
    "ExperimentConfig",
    "ReplicationRecord",
    "ExperimentSummary",
    "hellinger",
    "five_number",
    "replication_seed",
    "run_replication",
    "run_experiment",
]

logger = logging.getLogger(__name__)

S_REF_POLICIES = ("true_s_star", "bicu_selected")
_POLICY_ALIASES = {"TrueSStar": "true_s_star", "BICUSelected": "bicu_selected"}


def hellinger(est, truth) -> float:
    """``||est - truth||_2 / sqrt(2)`` after zero-padding the shorter vector.

    This is the distance used to compare ordered direction probabilities; it
    omits the square roots of the textbook Hellinger distance.

    >>> hellinger([0.5, 0.5], [1.0, 0.0])
    0.5
    """
    a = np.asarray(est, dtype=float)
    b = np.asarray(truth, dtype=float)
    for name, v in (("est", a), ("truth", b)):
        if v.ndim != 1 or v.size == 0 or np.any(~np.isfinite(v)) or np.any(v < 0):
            raise ValueError(f"{name} is not a probability vector")
        if abs(v.sum() - 1.0) > 1e-9:
            raise ValueError(f"{name} does not sum to 1 (sum={v.sum()!r})")
    m = max(a.size, b.size)
    a = np.pad(a, (0, m - a.size))
    b = np.pad(b, (0, m - b.size))
    return float(np.sqrt(np.sum((a - b) ** 2)) / np.sqrt(2.0))


def five_number(values) -> dict | None:
    """Min, quartiles and max of the finite entries, or None if there are none."""
    v = np.asarray([x for x in values if x is not None], dtype=float)
    v = v[np.isfinite(v)]
    if v.size == 0:
        return None
    q = np.quantile(v, [0.0, 0.25, 0.5, 0.75, 1.0])
    return dict(zip(("min", "q1", "median", "q3", "max"), (float(x) for x in q)))


@dataclass(frozen=True)
class ExperimentConfig:
    """Settings of one experiment.

    ``q_models`` defaults to ``2 * d``. ``truth`` overrides the model's
    default true direction weights in the Hellinger comparison.
    """

    model: ModelSpec
    n: int
    k: int
    q_models: int | None = None
    replications: int = 25
    master_seed: int = 0
    criteria: tuple[str, ...] = CRITERIA
    s_ref_policy: str = "true_s_star"
    truth: TrueDirections | None = None

    def __post_init__(self):
        if self.q_models is None:
            object.__setattr__(self, "q_models", 2 * self.model.d)
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(
            self, "s_ref_policy", _POLICY_ALIASES.get(self.s_ref_policy, self.s_ref_policy)
        )
        if not 1 <= self.k <= self.n - 1:
            raise ValueError(f"k must lie in [1, n-1], got k={self.k}, n={self.n}")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.q_models < 1:
            raise ValueError("q_models must be >= 1")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        unknown = set(self.criteria) - set(CRITERIA)
        if unknown or not self.criteria:
            raise ValueError(f"criteria must be a nonempty subset of {CRITERIA}")
        if self.s_ref_policy not in S_REF_POLICIES:
            raise ValueError(f"s_ref_policy must be one of {S_REF_POLICIES}")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["model"] = spec_to_dict(self.model)
        out["criteria"] = list(self.criteria)
        if self.truth is not None:
            out["truth"] = [{"key": list(k), "weight": w} for k, w in self.truth.entries]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        """Build from a mapping with the field names as keys.

        Raises ``KeyError`` naming the first missing or unknown key.
        """
        data = dict(data)
        required = ("model", "n", "k")
        for key in required:
            if key not in data:
                raise KeyError(key)
        extra = sorted(set(data) - set(cls.__dataclass_fields__))
        if extra:
            raise KeyError(extra[0])
        model = data.pop("model")
        if not isinstance(model, dict):
            raise KeyError("model")
        if data.get("truth") is not None:
            data["truth"] = TrueDirections(
                tuple((tuple(int(i) for i in e["key"]), float(e["weight"])) for e in data["truth"])
            )
        return cls(model=spec_from_dict(model), **data)


@dataclass(frozen=True)
class ReplicationRecord:
    rep_index: int
    seed_entropy: int
    spawn_key: tuple[int, ...]
    k: int
    s_hat: int
    threshold: float
    degenerate: bool
    selected: dict = field(default_factory=dict)
    hellinger: dict = field(default_factory=dict)
    diagnostics: ConsistencyDiagnostics | None = None
    multi_observed: int = 0
    candidate_range_strained: bool = False

    @property
    def s_hat_over_k(self) -> float:
        return self.s_hat / self.k

    def to_dict(self) -> dict:
        out = asdict(self)
        out["spawn_key"] = list(self.spawn_key)
        out["s_hat_over_k"] = self.s_hat_over_k
        return out


def replication_seed(master_seed: int, rep_index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(master_seed, spawn_key=(rep_index,))


def _s_ref(config: ExperimentConfig, profiles) -> int:
    if config.s_ref_policy == "true_s_star":
        return config.model.s_star
    return profiles["BICU"].selected


def run_replication(config: ExperimentConfig, rep_index: int) -> ReplicationRecord:
    ss = replication_seed(config.master_seed, rep_index)
    X = generate(config.model, config.n, ss)
    tally = tally_directions(X, config.k)
    del X
    base = dict(
        rep_index=rep_index,
        seed_entropy=int(ss.entropy),
        spawn_key=tuple(ss.spawn_key),
        k=tally.k,
        s_hat=tally.s_hat,
        threshold=tally.threshold,
        multi_observed=int(np.count_nonzero(tally.ordered > 1)),
    )
    if tally.s_hat < 2:
        return ReplicationRecord(degenerate=True, **base)

    wanted = set(config.criteria)
    if config.s_ref_policy == "bicu_selected":
        wanted.add("BICU")
    profiles = evaluate_profiles(
        tally, config.q_models, [c for c in CRITERIA if c in wanted], warn=False
    )
    truth = (config.truth or true_direction_weights(config.model)).sorted_weights()
    selected = {c: profiles[c].selected for c in config.criteria}
    dist = {c: hellinger(normalized_conditional(tally, s), truth) for c, s in selected.items()}

    s_ref = _s_ref(config, profiles)
    diag = diagnostics(tally, s_ref) if 1 <= s_ref < tally.s_hat else None
    return ReplicationRecord(
        degenerate=False,
        selected=selected,
        hellinger=dist,
        diagnostics=diag,
        candidate_range_strained=bool(config.q_models >= np.sqrt(tally.s_hat)),
        **base,
    )


@dataclass
class ExperimentSummary:
    """Aggregated results; list entries are aligned with replication index.

    ``selected`` and ``hellinger`` hold ``None`` for degenerate or failed
    replications.
    """

    config: ExperimentConfig
    records: list[ReplicationRecord | None]
    errors: list[dict] = field(default_factory=list)

    def selected(self, criterion: str) -> list[int | None]:
        return [None if r is None or r.degenerate else r.selected[criterion] for r in self.records]

    def hellinger(self, criterion: str) -> list[float | None]:
        return [None if r is None or r.degenerate else r.hellinger[criterion] for r in self.records]

    def s_hat_over_k(self) -> list[float | None]:
        return [None if r is None else r.s_hat_over_k for r in self.records]

    def diagnostics(self) -> list[ConsistencyDiagnostics | None]:
        return [None if r is None else r.diagnostics for r in self.records]

    def mean_selected(self, criterion: str) -> float:
        v = [x for x in self.selected(criterion) if x is not None]
        return float(np.mean(v)) if v else float("nan")

    def to_dict(self) -> dict:
        per_criterion = {}
        for c in self.config.criteria:
            sel, hel = self.selected(c), self.hellinger(c)
            per_criterion[c] = {
                "selected": sel,
                "hellinger": hel,
                "selected_summary": five_number(sel),
                "hellinger_summary": five_number(hel),
            }
        return {
            "config": self.config.to_dict(),
            "criteria": per_criterion,
            "s_hat_over_k": self.s_hat_over_k(),
            "replications": [None if r is None else r.to_dict() for r in self.records],
            "errors": list(self.errors),
        }


def run_experiment(config: ExperimentConfig, workers: int = 1) -> ExperimentSummary:
    """Run all replications, optionally on a thread pool.

    A failing replication is recorded in ``errors`` (with its seed) and leaves
    ``None`` in its slot; the other replications still complete.
    """

    def one(i):
        try:
            return run_replication(config, i), None
        except Exception as exc:  # reported, not raised: partial summaries are useful
            ss = replication_seed(config.master_seed, i)
            logger.exception("replication %d failed", i)
            return None, {
                "rep_index": i,
                "seed_entropy": int(ss.entropy),
                "spawn_key": list(ss.spawn_key),
                "error": f"{type(exc).__name__}: {exc}",
            }

    reps = range(config.replications)
    if workers <= 1:
        results = [one(i) for i in reps]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, reps))
    records = [r for r, _ in results]
    errors = [e for _, e in results if e is not None]
    return ExperimentSummary(config=config, records=records, errors=errors)
