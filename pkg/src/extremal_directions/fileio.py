"""CSV and JSON reading/writing for data matrices and reports."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

__all__ = ["read_data_csv", "write_data_csv", "write_json", "write_boxplot_csv", "key_to_json"]

BOXPLOT_COLUMNS = (
    "criterion",
    "replication",
    "s_selected",
    "hellinger",
    "c_hat",
    "mu_hat",
    "q_hat",
    "g_aic",
    "g_qaic",
    "g_mseic",
)


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_data_csv(path) -> np.ndarray:
    """Read a comma-separated numeric matrix.

    Lines starting with ``#`` are skipped and a single non-numeric header
    row is allowed. Entries must be finite and nonnegative; the error
    message names the offending row and column (1-based, counting data rows
    only).
    """
    rows = []
    header_seen = False
    with open(path, newline="") as fh:
        for fields in csv.reader(line for line in fh if not line.lstrip().startswith("#")):
            if not fields or all(not f.strip() for f in fields):
                continue
            if not rows and not header_seen and not all(_is_number(f) for f in fields):
                header_seen = True
                continue
            rows.append(fields)
    if not rows:
        raise ValueError(f"{path}: no data rows")
    width = len(rows[0])
    X = np.empty((len(rows), width))
    for i, fields in enumerate(rows):
        if len(fields) != width:
            raise ValueError(f"row {i + 1} has {len(fields)} columns, expected {width}")
        for j, f in enumerate(fields):
            try:
                x = float(f)
            except ValueError:
                raise ValueError(f"row {i + 1}, column {j + 1}: {f!r} is not a number") from None
            if not np.isfinite(x) or x < 0:
                raise ValueError(f"row {i + 1}, column {j + 1}: {f!r} is not finite and nonnegative")
            X[i, j] = x
    return X


def write_data_csv(path, X, comment: str | None = None) -> None:
    """Write ``X`` with 17 significant digits, optionally after a ``#`` line."""
    with open(path, "w", newline="") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        np.savetxt(fh, np.asarray(X), delimiter=",", fmt="%.17g")


def key_to_json(key) -> list[int]:
    return [int(i) for i in key]


def _default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, default=_default)


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def write_boxplot_csv(path, summary) -> int:
    """One row per (criterion, replication); returns the number of rows."""
    n_rows = 0
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(BOXPLOT_COLUMNS)
        for c in summary.config.criteria:
            for i, rec in enumerate(summary.records):
                sel = hel = None
                diag = None
                if rec is not None:
                    diag = rec.diagnostics
                    if not rec.degenerate:
                        sel, hel = rec.selected[c], rec.hellinger[c]
                d = [
                    None if diag is None else getattr(diag, f)
                    for f in ("c_hat", "mu_hat", "q_hat", "g_aic", "g_qaic", "g_mseic")
                ]
                writer.writerow(
                    [c, i, sel, None if hel is None else repr(hel)]
                    + ["" if x is None else repr(float(x)) for x in d]
                )
                n_rows += 1
    return n_rows
