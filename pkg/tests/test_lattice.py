"""Momentum grid bookkeeping: folding, eta grouping, k paths."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bhcomplexity.lattice import (MomentumGrid, eta, eta_groups, k_path,
                                  make_grid, path_coordinate)

extents_st = st.lists(st.integers(min_value=1, max_value=12), min_size=1, max_size=3).map(tuple)


def test_grid_enumerates_full_zone():
    g = make_grid((4, 6))
    assert g.indices.shape == (24, 2)
    k = g.k_values()
    assert k.shape == (24, 2)
    assert np.all(k >= 0.0) and np.all(k < 2.0 * np.pi)
    # row-major enumeration, one row per index tuple
    assert len({tuple(r) for r in g.indices}) == 24


def negation_permutation(g: MomentumGrid) -> np.ndarray:
    """Row permutation sending each momentum row to the row of -k."""
    return np.ravel_multi_index(g.negate().T, g.extents)


@given(extents_st)
@settings(deadline=None, max_examples=60)
def test_negate_is_an_involution(extents):
    g = make_grid(extents)
    perm = negation_permutation(g)
    assert np.array_equal(perm[perm], np.arange(len(g.indices)))


@given(extents_st)
@settings(deadline=None, max_examples=60)
def test_eta_matches_negated_index_bitwise(extents):
    # the fluctuation block depends on k only through eta, and the folded
    # evaluation must make eta(-k) == eta(k) exact, not just close
    g = make_grid(extents)
    vals = eta(g)
    assert np.array_equal(vals, vals[negation_permutation(g)])
    assert np.all(np.abs(vals) <= 1.0 + 1e-15)


def test_eta_against_direct_cosine_sum():
    g = make_grid((5, 7))
    k = g.k_values()
    direct = np.cos(k).mean(axis=1)
    assert np.allclose(eta(g), direct, atol=1e-12)


def test_self_conjugate_mask():
    g = make_grid((4, 3))
    mask = g.self_conjugate_mask()
    explicit = np.all(g.negate() == g.indices, axis=1)
    assert np.array_equal(mask, explicit)
    # extent 4 contributes indices {0, 2}, extent 3 only {0}
    assert mask.sum() == 2


@given(extents_st)
@settings(deadline=None, max_examples=60)
def test_eta_groups_reconstruct(extents):
    g = make_grid(extents)
    vals = eta(g)
    uniq, inverse, counts = eta_groups(g)
    assert np.array_equal(uniq[inverse], vals)
    assert counts.sum() == len(vals)
    assert np.all(np.diff(uniq) > 0)


def test_eta_grouping_shrinks_the_zone():
    g = make_grid((20, 20))
    uniq, _, _ = eta_groups(g)
    assert len(uniq) < 400 / 3  # folded square lattice collapses hard


def test_k_path_snaps_and_dedups():
    g = make_grid((10, 10))
    verts = [(0.0, 0.0), (np.pi, 0.0), (np.pi, np.pi)]
    path = k_path(g, verts, samples_per_segment=5)
    assert path.dtype == np.int64
    assert np.array_equal(path[0], [0, 0])
    assert np.array_equal(path[-1], [5, 5])
    assert any(np.array_equal(row, [5, 0]) for row in path)
    # consecutive duplicates are dropped
    assert np.all(np.any(path[1:] != path[:-1], axis=1))
    s = path_coordinate(g, path)
    assert s[0] == 0.0
    assert np.all(np.diff(s) > 0)
    assert np.isclose(s[-1], 2.0 * np.pi, atol=1e-12)


def test_k_path_rejects_degenerate_input():
    g = make_grid((4, 4))
    with pytest.raises(ValueError):
        k_path(g, [(0.0, 0.0)], 4)
    with pytest.raises(ValueError):
        k_path(g, [(0.0, 0.0), (np.pi, np.pi)], samples_per_segment=1)
    with pytest.raises(ValueError):
        k_path(g, [(0.0,), (np.pi,)], 4)
