"""Shared builders and independent oracles for the tests."""
from collections import deque

import numpy as np

from tsplab import Instance, Metric


def random_points(rng, n, span=20):
    pts = set()
    while len(pts) < n:
        pts.add((int(rng.integers(0, span)), int(rng.integers(0, span))))
    return np.array(sorted(pts))


def random_metric_matrix(rng, n, hi=30):
    """Shortest-path closure of random weights: always a metric."""
    w = rng.integers(1, hi, size=(n, n))
    d = np.triu(w, 1)
    d = d + d.T
    for k in range(n):
        d = np.minimum(d, d[:, k][:, None] + d[k, :][None, :])
    return d


def random_instance(rng, n, kind):
    if kind == "explicit":
        return Instance(n, Metric.explicit(random_metric_matrix(rng, n)))
    if kind == "raw":
        w = rng.integers(1, 6, size=(n, n))
        d = np.triu(w, 1)
        return Instance(n, Metric.explicit(d + d.T))
    p = {"l1": 1, "l2": 2, "l3": 3}[kind]
    return Instance(n, Metric.lp(p), random_points(rng, n))


def bfs_hops(adjacency, source):
    dist = {source: 0}
    q = deque([source])
    while q:
        x = q.popleft()
        for y in adjacency[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def naive_greedy(keys):
    """Textbook greedy: rescan every pair each round, lexicographic ties.

    Independent of the sorted single-pass implementation.
    """
    n = keys.shape[0]
    deg = [0] * n
    comp = list(range(n))
    chosen = []
    while len(chosen) < n:
        best = None
        for u in range(n):
            for v in range(u + 1, n):
                if deg[u] > 1 or deg[v] > 1:
                    continue
                closing = len(chosen) == n - 1
                if (comp[u] == comp[v]) != closing:
                    continue
                cand = (int(keys[u, v]), u, v)
                if best is None or cand < best:
                    best = cand
        _, u, v = best
        chosen.append(best)
        deg[u] += 1
        deg[v] += 1
        old, new = comp[u], comp[v]
        comp = [new if c == old else c for c in comp]
    return chosen
