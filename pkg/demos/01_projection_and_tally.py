"""
Sparse directions from the simplex projection
=============================================

Self-normalising a heavy-tailed vector by its L1 norm almost never gives a
zero coordinate. Projecting onto the simplex instead does, and the set of
nonzero coordinates is the "direction" of an extreme observation.
"""

import numpy as np

from extremal_directions import project_simplex, support, tally_directions

# A vector with one dominant coordinate: the plain normalisation keeps
# every coordinate, the projection keeps only the large one
v = np.array([2.4, 0.3, 0.1])
print("v / |v|_1    :", v / v.sum())
print("projection   :", project_simplex(v), "support", support(project_simplex(v)))

# Two comparable coordinates survive together
print("projection   :", project_simplex([0.8, 0.7, 0.1]))

# The tally: take the k largest rows by L1 norm, divide by the (k+1)-th
# largest norm, project, and count supports
X = np.array(
    [
        [10, 0, 0],
        [0, 8, 8],
        [1, 1, 0],
        [0.5, 0, 0],
        [0.2, 0.1, 0],
    ]
)
tally = tally_directions(X, k=2)
print("threshold    :", tally.threshold)
print("counts       :", dict(tally.counts))
print("ordered      :", tally.ordered, "s_hat =", tally.s_hat)

# On heavy-tailed data the same recipe sees the extremal structure: here the
# first two coordinates are Pareto and always large together, the others
# are light-tailed noise
rng = np.random.default_rng(0)
R = 1 / rng.random(20_000)
noise = rng.exponential(size=(20_000, 3))
Y = np.column_stack([R, R + rng.exponential(size=20_000), noise])
for key, count in tally_directions(Y, 200).top(4):
    print(f"  direction {key}: {count}")
