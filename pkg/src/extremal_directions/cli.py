"""Command-line interface.

Subcommands: ``estimate``, ``simulate``, ``experiment``, ``diagnose`` and
``gfun``. Exit codes: 0 success, 2 usage or input error, 1 internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import fileio
from .criteria import CRITERIA, evaluate_profiles
from .diagnostics import diagnostics, g_aic, g_mseic, g_qaic
from .harness import ExperimentConfig, run_experiment
from .models import AsympDep, AsympIndep, AxisOracle, generate, spec_to_dict
from .tally import as_data_matrix, tally_directions

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    """Bad user input; reported with exit code 2."""


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _load(path) -> np.ndarray:
    try:
        return as_data_matrix(fileio.read_data_csv(path))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _parse_criteria(text: str) -> tuple[str, ...]:
    names = tuple(c.strip().upper() for c in text.split(",") if c.strip())
    bad = [c for c in names if c not in CRITERIA]
    if bad or not names:
        raise InputError(f"--criteria must be a comma-separated subset of {','.join(CRITERIA)}")
    return names


def _tally(X, k):
    try:
        return tally_directions(X, k)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def estimate_report(X, k: int, q_models: int | None = None, criteria=CRITERIA, top: int = 50) -> dict:
    """The JSON report written by ``estimate``, as a dict."""
    n, d = X.shape
    q_models = 2 * d if q_models is None else q_models
    tally = _tally(X, k)
    report = {
        "n": n,
        "d": d,
        "k": tally.k,
        "threshold": tally.threshold,
        "s_hat": tally.s_hat,
        "q_models": q_models,
        "degenerate": tally.s_hat < 2,
        "top_directions": [
            {"key": fileio.key_to_json(key), "count": c} for key, c in tally.top(top)
        ],
        "q_eff": None,
        "criteria": {},
        "diagnostics": None,
    }
    if tally.s_hat < 2:
        return report
    profiles = evaluate_profiles(tally, q_models, CRITERIA)
    report["q_eff"] = profiles["BICU"].q_eff
    report["criteria"] = {
        c: {"values": profiles[c].values.tolist(), "selected": profiles[c].selected}
        for c in criteria
    }
    report["diagnostics"] = diagnostics(tally, profiles["BICU"].selected).to_dict()
    return report


def cmd_estimate(args) -> int:
    X = _load(args.data_csv)
    if args.q_models is not None and args.q_models < 1:
        raise InputError("--q-models must be >= 1")
    report = estimate_report(X, args.k, args.q_models, _parse_criteria(args.criteria), args.top)
    _emit(fileio.dumps(report), args.out)
    return EXIT_OK


def _model_from_args(args):
    try:
        if args.model == "asymp-indep":
            _require(args, "s_star", "d")
            return AsympIndep(args.s_star, args.d, args.correlation)
        if args.model == "asymp-dep":
            _require(args, "s1", "s2", "s3", "d")
            return AsympDep(args.s1, args.s2, args.s3, args.d)
        _require(args, "weights", "d")
        weights = tuple(float(w) for w in args.weights.split(","))
        return AxisOracle(weights, args.d)
    except ValueError as exc:
        raise InputError(f"invalid model: {exc}") from None


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required for --model {args.model}")


def cmd_simulate(args) -> int:
    spec = _model_from_args(args)
    if args.n < 2:
        raise InputError("--n must be >= 2")
    X = generate(spec, args.n, args.seed)
    info = spec_to_dict(spec)
    kind = info.pop("kind")
    params = " ".join(f"{k}={v}" for k, v in info.items())
    comment = f"model={kind} {params} n={args.n} seed={args.seed}"
    if args.out:
        fileio.write_data_csv(args.out, X, comment)
    else:
        sys.stdout.write(f"# {comment}\n")
        np.savetxt(sys.stdout, X, delimiter=",", fmt="%.17g")
    return EXIT_OK


def cmd_experiment(args) -> int:
    try:
        raw = json.loads(Path(args.config).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {args.config}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.config}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise InputError("config must be a JSON object")
    try:
        config = ExperimentConfig.from_dict(raw)
    except KeyError as exc:
        raise InputError(f"config key {exc.args[0]!r} is missing or not recognised") from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"invalid config: {exc}") from None

    summary = run_experiment(config, workers=args.workers)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    fileio.write_json(out / "summary.json", summary.to_dict())
    fileio.write_boxplot_csv(out / "boxplot.csv", summary)
    if summary.errors:
        for err in summary.errors:
            print(f"replication {err['rep_index']} failed: {err['error']}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_diagnose(args) -> int:
    X = _load(args.data_csv)
    tally = _tally(X, args.k)
    if tally.s_hat < 2:
        raise InputError("fewer than two observed directions; diagnostics undefined")
    s_ref = args.s_ref
    if s_ref is None:
        s_ref = evaluate_profiles(tally, 2 * X.shape[1], ("BICU",), warn=False)["BICU"].selected
    try:
        diag = diagnostics(tally, s_ref)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(fileio.dumps({"s_hat": tally.s_hat, "k": tally.k, **diag.to_dict()}), None)
    return EXIT_OK


def cmd_gfun(args) -> int:
    try:
        out = {"g_aic": g_aic(args.q, args.mu), "g_qaic": g_qaic(args.q), "g_mseic": g_mseic(args.q, args.mu)}
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(fileio.dumps(out), None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extremal-directions",
        description="Estimate the number of extremal directions of heavy-tailed data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="tally directions and evaluate the criteria on a CSV")
    p.add_argument("data_csv")
    p.add_argument("--k", type=int, required=True, help="number of extremes")
    p.add_argument("--q-models", type=int, default=None, help="candidate sizes (default 2*d)")
    p.add_argument("--criteria", default=",".join(CRITERIA))
    p.add_argument("--top", type=int, default=50, help="number of directions to list")
    p.add_argument("--out", default=None, help="output JSON path (default stdout)")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("simulate", help="write a simulated data matrix as CSV")
    p.add_argument("--model", required=True, choices=("asymp-indep", "asymp-dep", "axis-oracle"))
    p.add_argument("--s-star", type=int)
    p.add_argument("--s1", type=int)
    p.add_argument("--s2", type=int)
    p.add_argument("--s3", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--weights", help="comma-separated axis weights (axis-oracle)")
    p.add_argument("--correlation", default="gram", choices=("gram", "identity"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("experiment", help="run a Monte Carlo experiment from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("diagnose", help="print the consistency diagnostics of a CSV")
    p.add_argument("data_csv")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s-ref", type=int, default=None, help="reference size (default: BICU choice)")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("gfun", help="evaluate the consistency functions")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.set_defaults(func=cmd_gfun)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
