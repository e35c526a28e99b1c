"""
Replicated experiments
======================

An experiment is a config plus a master seed. Replication i draws from the
seed sequence (master_seed, i), so the summary does not depend on how many
worker threads run it.
"""

import json

import numpy as np

from extremal_directions import AsympDep, ExperimentConfig, run_experiment
from extremal_directions.fileio import dumps

config = ExperimentConfig(
    AsympDep(s1=30, s2=15, s3=5, d=300),
    n=25_000,
    k=2_500,
    replications=8,
    master_seed=7,
)
summary = run_experiment(config, workers=4)

for c in config.criteria:
    sel = summary.selected(c)
    print(f"{c:>6}: selections {sel}  mean Hellinger {np.mean(summary.hellinger(c)):.3f}")

# Diagnostics at the true size
for d in summary.diagnostics()[:3]:
    print(f"  c_hat={d.c_hat:.3f} mu_hat={d.mu_hat:.3f} q_hat={d.q_hat:.2f} g_aic={d.g_aic:+.2f}")

# Same seed, one worker: identical summary
assert dumps(run_experiment(config, workers=1).to_dict()) == dumps(summary.to_dict())

# The config serialises to the JSON accepted by `extremal-directions experiment`
print(json.dumps(config.to_dict()))
