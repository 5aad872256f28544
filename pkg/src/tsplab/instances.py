"""Adversarial instance families and their certificates.

Grid family ``G_k``: the points of a 2 x w_k grid, ``w_k = (3**(k+2) - 1) / 2``,
so ``3**(k+2) - 1`` cities. City ``(x, y)`` has id ``2*x + y``; columns are
0-indexed, row 1 is the top row. ``s_k`` sits in the top row at column
``(3**(k+1) - 1) / 2`` and ``r_k`` is the right-most bottom city.

``G_{k+1}`` is three copies of ``G_k`` side by side with a single spare column
between the first two; the middle copy is mirrored so that its ``r`` end faces
the spare column. The spare column's top city is ``s_{k+1}``.

1-2 family: 1-based city names 1..n map to ids 0..n-1.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .metrics import Instance, Metric, MetricError, graphic_all_pairs

GK_CAP = 6

FAMILIES = ("gk", "cwgk", "onetwo")


class CapError(MetricError):
    pass


@dataclass(frozen=True)
class GkMeta:
    k: int
    width: int
    s_id: int
    r_id: int

    @property
    def n(self) -> int:
        return 2 * self.width


@dataclass(frozen=True)
class HubMeta:
    hub_id: int
    hub_len_scaled: int


@dataclass(frozen=True)
class Certificate:
    """Ordered edge list claimed to be a prefix of a heuristic run."""

    family: str  # "gk" | "cwgk" | "onetwo"
    param: int
    edges: tuple[tuple[int, int], ...]
    expected_length: int  # scaled

    def __len__(self):
        return len(self.edges)


def city_id(x: int, y: int) -> int:
    return 2 * x + y


def gk_width(k: int) -> int:
    return (3 ** (k + 2) - 1) // 2


def gk_partial_length(k: int) -> int:
    """Length of the certified partial greedy path on level ``k``."""
    return (2 * k + 8) * 3 ** k - 1


def _check_k(k: int, cap: int):
    if k < 0:
        raise ValueError(f"level k must be >= 0, got {k}")
    if k > cap:
        raise CapError(f"level k={k} exceeds cap {cap} ({3 ** (k + 2) - 1} cities)")


def gk_meta(k: int) -> GkMeta:
    w = gk_width(k)
    s_col = (3 ** (k + 1) - 1) // 2
    return GkMeta(k, w, city_id(s_col, 1), city_id(w - 1, 0))


def parse_kind(kind) -> Metric | str:
    """``"l1" | "l2" | "lp:P" | "graphic"`` (case-insensitive) to a metric spec."""
    if isinstance(kind, Metric):
        return kind
    text = str(kind).strip().lower()
    if text == "graphic":
        return "graphic"
    if text == "l1":
        return Metric.lp(1)
    if text == "l2":
        return Metric.lp(2)
    if text.startswith("lp:") or text.startswith("l"):
        digits = text[3:] if text.startswith("lp:") else text[1:]
        if digits.isdigit() and int(digits) >= 1:
            return Metric.lp(int(digits))
    raise ValueError(f"unknown metric kind {kind!r}; expected l1, l2, lp:P or graphic")


def grid_coords(k: int) -> np.ndarray:
    w = gk_width(k)
    ids = np.arange(2 * w)
    return np.stack([ids // 2, ids % 2], axis=1)


def grid_adjacency(width: int) -> list[list[int]]:
    """Unit-distance graph on the 2 x width grid."""
    adj = [[] for _ in range(2 * width)]
    for x in range(width):
        a, b = city_id(x, 0), city_id(x, 1)
        adj[a].append(b)
        adj[b].append(a)
        if x + 1 < width:
            for y in (0, 1):
                u, v = city_id(x, y), city_id(x + 1, y)
                adj[u].append(v)
                adj[v].append(u)
    return adj


def gen_gk(k: int, kind="l1", cap: int = GK_CAP) -> tuple[Instance, GkMeta]:
    _check_k(k, cap)
    meta = gk_meta(k)
    spec = parse_kind(kind)
    coords = grid_coords(k)
    if spec == "graphic":
        metric = Metric.graphic(grid_adjacency(meta.width))
    else:
        metric = spec
    inst = Instance(meta.n, metric, coords, name=f"gk{k}_{metric.label}")
    return inst, meta


@lru_cache(maxsize=None)
def _gk_path(k: int) -> tuple[tuple[tuple[int, int], tuple[int, int], int], ...]:
    """Certified path on level ``k`` as ``(point, point, length)`` in selection order."""
    if k == 0:
        pts = [(1, 1), (0, 1), (0, 0), (1, 0), (2, 0), (2, 1), (3, 1), (3, 0)]
        return tuple((a, b, 1) for a, b in zip(pts, pts[1:]))
    sub = _gk_path(k - 1)
    w = gk_width(k - 1)
    s = (3 ** k - 1) // 2
    placements = (
        lambda x: x,
        lambda x: 2 * w - x,
        lambda x: x + 2 * w + 1,
    )
    copies = []
    for c, place in enumerate(placements):
        copies.append([
            (length, c, i, (place(a[0]), a[1]), (place(b[0]), b[1]))
            for i, (a, b, length) in enumerate(sub)
        ])
    head = [((w - 1, 0), (w, 0), 1), ((w, 0), (w + 1, 0), 1)]
    body = [(a, b, length) for length, _, _, a, b in heapq.merge(*copies)]
    top = 3 ** k
    tail = [((s, 1), (w, 1), top), ((2 * w - s, 1), (2 * w + 1 + s, 1), top)]
    return tuple(head + body + tail)


def gk_certificate(k: int, cap: int = GK_CAP) -> Certificate:
    _check_k(k, cap)
    edges = tuple((city_id(*a), city_id(*b)) for a, b, _ in _gk_path(k))
    return Certificate("gk", k, edges, gk_partial_length(k))


def gen_cw_instance(k: int, cap: int = GK_CAP) -> tuple[Instance, GkMeta, HubMeta]:
    """Grid ``G_k`` under hop distances plus a hub at id ``n_k`` joined to
    every grid city by an edge of true length ``3**(k+2) / 2`` (scale 2)."""
    _check_k(k, cap)
    meta = gk_meta(k)
    hub_len = 3 ** (k + 2)
    n = meta.n + 1
    mat = np.empty((n, n), dtype=np.int64)
    mat[:-1, :-1] = 2 * graphic_all_pairs(grid_adjacency(meta.width))
    mat[-1, :] = hub_len
    mat[:, -1] = hub_len
    mat[-1, -1] = 0
    inst = Instance(n, Metric.explicit(mat, scale=2), name=f"cwgk{k}")
    return inst, meta, HubMeta(meta.n, hub_len)


def cw_certificate(k: int, cap: int = GK_CAP) -> Certificate:
    # grid ids are unchanged inside the hub instance; only the family differs
    cert = gk_certificate(k, cap)
    return Certificate("cwgk", k, cert.edges, 2 * gk_partial_length(k))


def _check_odd(n: int):
    if n < 5 or n % 2 == 0:
        raise ValueError(f"1-2 family needs an odd n >= 5, got {n}")


def gen_one_two(n: int) -> Instance:
    """Cycle 1..n plus chords {i, i+2} between odd cities get length 1; all
    other pairs length 2. City i is stored as id i-1."""
    _check_odd(n)
    mat = np.full((n, n), 2, dtype=np.int64)
    np.fill_diagonal(mat, 0)
    for i in range(n):
        j = (i + 1) % n
        mat[i, j] = mat[j, i] = 1
    for i in range(0, n - 2, 2):
        mat[i, i + 2] = mat[i + 2, i] = 1
    return Instance(n, Metric.explicit(mat), name=f"onetwo{n}")


def one_two_certificate(n: int) -> Certificate:
    """Edges {2,3}, {1,n}, {3,5}, {5,7}, ..., {n-2,n} (1-indexed names)."""
    _check_odd(n)
    named = [(2, 3), (1, n)] + [(i, i + 2) for i in range(3, n - 1, 2)]
    edges = tuple((a - 1, b - 1) for a, b in named)
    return Certificate("onetwo", n, edges, (n + 1) // 2)


def family_size(family: str, param: int) -> int:
    if family == "gk":
        return 3 ** (param + 2) - 1
    if family == "cwgk":
        return 3 ** (param + 2)
    if family == "onetwo":
        return param
    raise ValueError(f"unknown family {family!r}")
