from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from helpers import bfs_hops, random_instance
from tsplab import Instance, Metric, gen_gk, graphic_all_pairs, validate_gk_conditions, validate_metric
from tsplab.instances import city_id, grid_adjacency, grid_coords
from tsplab.metrics import DisconnectedError, InexactLengthError, MetricError


def test_dist_key_l1():
    inst, _ = gen_gk(0, "l1")
    assert inst.dist_key(city_id(0, 1), city_id(3, 0)) == 4


def test_dist_key_l2_is_squared_length():
    inst, _ = gen_gk(0, "l2")
    assert inst.dist_key(city_id(0, 0), city_id(3, 1)) == 10


def test_dist_key_graphic_matches_bfs():
    inst, _ = gen_gk(0, "graphic")
    adj = grid_adjacency(4)
    oracle = bfs_hops(adj, city_id(0, 1))[city_id(3, 0)]
    assert oracle == 4
    assert inst.dist_key(city_id(0, 1), city_id(3, 0)) == oracle


def test_dist_value_exact_and_inexact():
    inst, _ = gen_gk(0, "l2")
    assert inst.dist_value(city_id(1, 1), city_id(3, 1)) == (Fraction(2), True)
    value, exact = inst.dist_value(city_id(0, 0), city_id(3, 1))
    assert not exact
    assert value == pytest.approx(10 ** 0.5)
    wide, _ = gen_gk(1, "l2")
    assert wide.dist_value(city_id(1, 1), city_id(4, 1)) == (Fraction(3), True)


def test_dist_value_divides_by_scale():
    mat = np.array([[0, 9, 9], [9, 0, 9], [9, 9, 0]])
    inst = Instance(3, Metric.explicit(mat, scale=2))
    assert inst.dist_value(0, 1) == (Fraction(9, 2), True)
    assert float(inst.dist_value(0, 1).value) == 4.5


def test_dist_key_out_of_range():
    inst, _ = gen_gk(0, "l1")
    with pytest.raises(IndexError):
        inst.dist_key(0, 8)


def test_length_matrix_rejects_irrational_lengths():
    inst, _ = gen_gk(0, "l2")
    assert not inst.exact
    with pytest.raises(InexactLengthError):
        inst.length_matrix


def test_graphic_small_graphs():
    assert graphic_all_pairs([[1], [0, 2], [1]])[0, 2] == 2
    assert graphic_all_pairs([[1], [0]])[0, 1] == 1


def test_graphic_disconnected_names_pair():
    with pytest.raises(DisconnectedError, match="between 0 and 2"):
        graphic_all_pairs([[1], [0], []])


def test_graphic_cap():
    with pytest.raises(MetricError, match="cap"):
        graphic_all_pairs([[1], [0], []], cap=2)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_grid_graph_equals_rectilinear(k):
    l1, meta = gen_gk(k, "l1")
    hops = graphic_all_pairs(grid_adjacency(meta.width))
    np.testing.assert_array_equal(hops, l1.key_matrix)


def test_graphic_matches_scipy_on_random_graphs(rng):
    for _ in range(20):
        n = int(rng.integers(2, 40))
        adj = [set() for _ in range(n)]
        for v in range(1, n):  # random spanning tree keeps it connected
            u = int(rng.integers(0, v))
            adj[u].add(v)
            adj[v].add(u)
        for _ in range(n):
            u, v = (int(x) for x in rng.integers(0, n, size=2))
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        adj = [sorted(s) for s in adj]
        rows = [u for u in range(n) for _ in adj[u]]
        cols = [v for u in range(n) for v in adj[u]]
        graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        expected = shortest_path(graph, unweighted=True, directed=False)
        got = graphic_all_pairs(adj)
        np.testing.assert_array_equal(got, expected.astype(np.int64))
        assert validate_metric(got)


def test_validate_metric_examples():
    ones = np.ones((4, 4), dtype=int) - np.eye(4, dtype=int)
    assert validate_metric(ones).ok
    bad = np.array([[0, 1, 3], [1, 0, 1], [3, 1, 0]])
    verdict = validate_metric(bad)
    assert not verdict.ok
    assert verdict.violation == (0, 1, 2)
    assert "triangle" in verdict.reason


def test_validate_metric_symmetry_and_diagonal():
    assert validate_metric(np.array([[0, 1], [2, 0]])).reason == "not symmetric"
    assert validate_metric(np.array([[1, 1], [1, 0]])).violation == (0, 0)


def test_validate_metric_first_violation_is_lexicographic(rng):
    for _ in range(30):
        n = int(rng.integers(3, 8))
        w = rng.integers(1, 10, size=(n, n))
        d = np.triu(w, 1)
        d = d + d.T
        expected = next(((a, b, c) for a in range(n) for b in range(n) for c in range(n)
                         if d[a, c] > d[a, b] + d[b, c]), None)
        verdict = validate_metric(d)
        assert verdict.ok == (expected is None)
        if expected is not None:
            assert verdict.violation == expected


def test_validate_metric_cap():
    with pytest.raises(MetricError):
        validate_metric(np.zeros((5, 5), dtype=int), cap=4)


@pytest.mark.parametrize("kind", ["l1", "l2", "lp:3", "graphic"])
def test_gk_conditions_hold_for_norms_and_graphic(kind):
    inst, _ = gen_gk(1, kind)
    assert validate_gk_conditions(inst, 1).ok


def test_gk_conditions_detect_short_cross_pair():
    inst, _ = gen_gk(0, "l1")
    mat = np.array(inst.key_matrix)
    u, v = city_id(0, 0), city_id(3, 1)
    mat[u, v] = mat[v, u] = 2  # |dx| = 3
    bad = Instance(8, Metric.explicit(mat), grid_coords(0))
    verdict = validate_gk_conditions(bad, 0)
    assert not verdict.ok
    assert verdict.violation == (u, v)


def test_gk_conditions_need_coordinates():
    inst, _ = gen_gk(0, "l1")
    with pytest.raises(MetricError):
        validate_gk_conditions(Instance(8, Metric.explicit(inst.key_matrix)), 0)
    with pytest.raises(MetricError):
        validate_gk_conditions(inst, 1)


def test_metric_construction_errors():
    with pytest.raises(MetricError):
        Metric.lp(0)
    with pytest.raises(MetricError):
        Metric.explicit(np.array([[0, 1], [2, 0]]))
    with pytest.raises(MetricError):
        Metric.explicit(np.array([[1, 1], [1, 0]]))
    with pytest.raises(MetricError):
        Instance(3, Metric.lp(1))


@pytest.mark.parametrize("kind", ["l1", "l2", "l3", "explicit"])
def test_keys_symmetric_with_zero_diagonal(rng, kind):
    inst = random_instance(rng, 12, kind)
    K = inst.key_matrix
    np.testing.assert_array_equal(K, K.T)
    assert not np.diag(K).any()
    off = ~np.eye(12, dtype=bool)
    assert (K[off] > 0).all()


coord = st.integers(min_value=0, max_value=60)
point = st.tuples(coord, coord)


@settings(max_examples=200, deadline=None)
@given(st.lists(point, min_size=3, max_size=3, unique=True), st.sampled_from([1, 2, 3]))
def test_key_order_matches_float_order(points, p):
    inst = Instance(3, Metric.lp(p), np.array(points))
    a = np.array(points, dtype=float)
    true = {(i, j): float(np.sum(np.abs(a[i] - a[j]) ** p) ** (1 / p))
            for i in range(3) for j in range(3) if i < j}
    pairs = list(true)
    for e in pairs:
        for f in pairs:
            lt, lf = true[e], true[f]
            if abs(lt - lf) > 1e-6 * max(lt, lf):
                assert (inst.dist_key(*e) < inst.dist_key(*f)) == (lt < lf)
