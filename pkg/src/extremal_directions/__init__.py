"""Estimating the number of extremal directions of heavy-tailed data.

The pipeline: select the ``k`` largest observations by L1 norm, project them
onto the unit simplex, count the supports of the projections, and choose the
number of extremal directions with an information criterion.
"""

from .projection import project_rows, project_simplex, support
from .tally import (
    DirectionTally,
    l1_norms,
    normalized_conditional,
    select_extremes,
    tally_directions,
    tally_from_counts,
)
from .criteria import CRITERIA, ICProfile, aic, bic_l, bic_u, evaluate_profiles, mseic, qaic
from .diagnostics import ConsistencyDiagnostics, diagnostics, g_aic, g_mseic, g_qaic
from .models import (
    AsympDep,
    AsympIndep,
    AxisOracle,
    TrueDirections,
    gen_asymp_dep,
    gen_asymp_indep,
    gen_axis_oracle,
    generate,
    true_direction_weights,
)
from .harness import ExperimentConfig, ExperimentSummary, hellinger, run_experiment, run_replication

__version__ = "0.1.0"
