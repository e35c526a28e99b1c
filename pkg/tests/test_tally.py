import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extremal_directions.models import AxisOracle, gen_axis_oracle
from extremal_directions.projection import project_simplex, support
from extremal_directions.tally import (
    l1_norms,
    normalized_conditional,
    select_extremes,
    tally_directions,
    tally_from_counts,
)

TOY = np.array(
    [[10, 0, 0], [0, 8, 8], [1, 1, 0], [0.5, 0, 0], [0.2, 0.1, 0]], dtype=float
)


def test_l1_norms():
    np.testing.assert_array_equal(l1_norms([[1, 0], [2, 3]]), [1, 5])
    np.testing.assert_array_equal(l1_norms([[0, 0, 0], [1, 1, 1]]), [0, 3])
    np.testing.assert_allclose(l1_norms([[0.2, 0.1, 0], [1, 0, 0]])[0], 0.3)


def _sort_oracle(norms, k):
    # rank by (-norm, index) with plain Python sorting
    ranked = sorted(range(len(norms)), key=lambda i: (-norms[i], i))
    return ranked[:k], norms[ranked[k]]


@pytest.mark.parametrize(
    "norms, k", [((10, 16, 2, 0.5, 0.3), 2), ((5, 5, 5), 1), ((3, 1, 3, 2, 3), 3)]
)
def test_select_extremes(norms, k):
    X = np.array(norms, dtype=float)[:, None]
    idx, t = select_extremes(X, k)
    exp_idx, exp_t = _sort_oracle(norms, k)
    assert list(idx) == exp_idx
    assert t == exp_t


def test_select_extremes_frozen():
    idx, t = select_extremes(np.array([[10], [16], [2], [0.5], [0.3]]), 2)
    assert list(idx + 1) == [2, 1] and t == 2
    idx, t = select_extremes(np.array([[5.0], [5.0], [5.0]]), 1)
    assert list(idx + 1) == [1] and t == 5


@pytest.mark.parametrize("k", [0, 2, 3])
def test_select_extremes_range(k):
    with pytest.raises(ValueError):
        select_extremes(np.array([[1.0], [2.0]]), k)


def test_select_extremes_zero_threshold():
    with pytest.raises(ValueError, match="degenerate"):
        select_extremes(np.array([[1.0], [0.0], [0.0]]), 1)


def test_toy_tally_hand_trace():
    # by hand: top rows are 2 and 1, t = 2; (0,4,4) -> {2,3}, (5,0,0) -> {1}
    assert support(project_simplex(TOY[1] / 2)) == (2, 3)
    assert support(project_simplex(TOY[0] / 2)) == (1,)
    tally = tally_directions(TOY, 2)
    assert dict(tally.counts) == {(1,): 1, (2, 3): 1}
    assert tally.threshold == 2
    assert list(tally.ordered) == [1, 1]
    assert tally.s_hat == 2
    # equal counts are ordered by the smaller key
    assert tally.keys == ((1,), (2, 3))


def test_all_on_first_axis():
    X = np.zeros((20, 3))
    X[:, 0] = np.arange(1, 21)
    tally = tally_directions(X, 7)
    assert dict(tally.counts) == {(1,): 7}
    assert tally.s_hat == 1


def test_invalid_data():
    with pytest.raises(ValueError, match="row 2, column 1"):
        tally_directions([[1.0, 1.0], [-1.0, 0.0], [2.0, 2.0]], 1)
    with pytest.raises(ValueError):
        tally_directions([[1.0, 2.0]], 1)


def test_normalized_conditional():
    tally = tally_from_counts({(1,): 4, (2,): 3, (3,): 1, (4,): 1, (5,): 1})
    np.testing.assert_allclose(normalized_conditional(tally, 2), [4 / 7, 3 / 7])
    np.testing.assert_array_equal(normalized_conditional(tally, 1), [1.0])
    two = tally_from_counts({(1,): 1, (2,): 1})
    np.testing.assert_array_equal(normalized_conditional(two, 2), [0.5, 0.5])
    for s in (0, 6):
        with pytest.raises(ValueError):
            normalized_conditional(tally, s)


def test_ordering_breaks_ties_by_key():
    tally = tally_from_counts({(3,): 2, (1, 2): 2, (1,): 5, (2,): 2})
    assert tally.keys == ((1,), (1, 2), (2,), (3,))
    assert list(tally.ordered) == [5, 2, 2, 2]


def _heavy_sample(seed, n=200, d=5):
    rng = np.random.default_rng(seed)
    return (1.0 / rng.random((n, d))) * (rng.random((n, d)) < 0.6)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 60))
def test_mass_conservation(seed, k):
    tally = tally_directions(_heavy_sample(seed), k)
    assert sum(tally.counts.values()) == k == tally.k
    assert tally.s_hat <= k
    assert all(c >= 1 for c in tally.counts.values())
    assert list(tally.ordered) == sorted(tally.counts.values(), reverse=True)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(-20, 20))
def test_scale_invariance(seed, e):
    # powers of two scale exactly in floating point
    X = _heavy_sample(seed)
    c = 2.0**e
    a, b = tally_directions(X, 25), tally_directions(c * X, 25)
    assert dict(a.counts) == dict(b.counts)
    assert b.threshold == c * a.threshold


def test_scale_invariance_generic_factor():
    X = _heavy_sample(11)
    a, b = tally_directions(X, 25), tally_directions(3.7 * X, 25)
    assert dict(a.counts) == dict(b.counts)
    assert b.threshold == pytest.approx(3.7 * a.threshold, rel=1e-15)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.permutations(range(5)))
def test_column_permutation(seed, perm):
    X = _heavy_sample(seed)
    a, b = tally_directions(X, 30), tally_directions(X[:, perm], 30)
    # column j of the permuted matrix is column perm[j] of X
    relabel = {j + 1: perm[j] + 1 for j in range(5)}
    mapped = {tuple(sorted(relabel[i] for i in key)): c for key, c in b.counts.items()}
    assert mapped == dict(a.counts)
    assert list(a.ordered) == list(b.ordered)


def test_fixed_dimension_consistency():
    spec = AxisOracle((0.5, 0.3, 0.2), d=3)
    tally = tally_directions(gen_axis_oracle(spec, 100_000, 5), 1_000)
    assert set(tally.counts) <= {(1,), (2,), (3,)}
    for axis, p in zip((1, 2, 3), spec.weights):
        assert abs(tally.counts[(axis,)] / 1_000 - p) <= 0.05
