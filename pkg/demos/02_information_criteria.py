"""
Choosing the number of directions
=================================

The ordered counts T_1 >= T_2 >= ... of a tally are scored by five
information criteria for each candidate size s; the argmin is the estimate.
"""

import logging

import numpy as np

from extremal_directions import CRITERIA, evaluate_profiles, tally_from_counts

# A small tally: two clearly frequent directions followed by single hits
tally = tally_from_counts({(1,): 40, (2,): 35, (1, 2): 3, (3,): 1, (4,): 1, (5,): 1})
print("ordered counts:", tally.ordered)

profiles = evaluate_profiles(tally, q_n=5, warn=False)
for name in CRITERIA:
    p = profiles[name]
    print(f"{name:>6}: selected s = {p.selected}   values {np.round(p.values, 2)}")

# The constant terms are kept, so values are comparable with direct
# evaluation; only the argmin matters for selection
print("AIC(1) on (4,3,1,1,1):", round(evaluate_profiles(np.array([4, 3, 1, 1, 1]), 1)["AIC"].value(1), 4))

# A candidate range that is large relative to sqrt(s_hat) is reported
# through the logging module
logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
evaluate_profiles(tally, q_n=12)
