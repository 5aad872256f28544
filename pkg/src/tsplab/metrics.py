"""Instances, exact distance keys and metric validation.

Heuristics never compare floating point lengths. Every instance exposes an
integer *key* per city pair whose ordering coincides with the ordering of the
true lengths:

* ``Lp`` with integer ``p``: ``(scale*|dx|)**p + (scale*|dy|)**p``
* graphic: ``scale * hops`` (hop distance in the unit-distance graph)
* explicit: the stored (already scaled) integer

For L1, graphic and explicit metrics the key *is* the scaled length. For
``p >= 2`` the scaled length is the integer p-th root of the key when that root
exists (always the case for axis-aligned pairs), and an inexact float
otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels

GRAPHIC_CAP = 10_000
VALIDATE_CAP = 2_000


class MetricError(ValueError):
    pass


class DisconnectedError(MetricError):
    pass


class InexactLengthError(MetricError):
    """Raised where an operation needs every length as an exact integer."""


class GridPoint(NamedTuple):
    x: int
    y: int


class Length(NamedTuple):
    """A true (unscaled) length: a Fraction when exact, else a float."""

    value: Fraction | float
    exact: bool


@dataclass(frozen=True, eq=False)
class Metric:
    kind: str  # "lp" | "graphic" | "explicit"
    p: int | None = None
    adjacency: tuple[tuple[int, ...], ...] | None = None
    matrix: np.ndarray | None = field(default=None, repr=False)
    scale: int = 1

    def __post_init__(self):
        if self.scale < 1:
            raise MetricError(f"scale must be a positive integer, got {self.scale}")
        if self.kind == "lp":
            if self.p is None or int(self.p) != self.p or self.p < 1:
                raise MetricError(f"Lp metric needs a positive integer p, got {self.p!r}")
        elif self.kind == "graphic":
            if self.adjacency is None:
                raise MetricError("graphic metric needs an adjacency list")
        elif self.kind == "explicit":
            if self.matrix is None:
                raise MetricError("explicit metric needs a matrix")
            mat = np.array(self.matrix, dtype=np.int64)
            if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
                raise MetricError(f"explicit matrix must be square, got shape {mat.shape}")
            if not np.array_equal(mat, mat.T):
                i, j = np.argwhere(mat != mat.T)[0]
                raise MetricError(f"explicit matrix not symmetric at ({i}, {j})")
            if np.any(np.diag(mat) != 0):
                raise MetricError("explicit matrix must have a zero diagonal")
            if np.any(mat < 0):
                raise MetricError("explicit matrix has negative entries")
            mat.setflags(write=False)
            object.__setattr__(self, "matrix", mat)
        else:
            raise MetricError(f"unknown metric kind {self.kind!r}")

    @classmethod
    def lp(cls, p: int, scale: int = 1) -> "Metric":
        return cls("lp", p=p, scale=scale)

    @classmethod
    def graphic(cls, adjacency: Sequence[Sequence[int]], scale: int = 1) -> "Metric":
        return cls("graphic", adjacency=tuple(tuple(int(v) for v in nb) for nb in adjacency),
                   scale=scale)

    @classmethod
    def explicit(cls, matrix, scale: int = 1) -> "Metric":
        return cls("explicit", matrix=matrix, scale=scale)

    @property
    def label(self) -> str:
        if self.kind == "lp":
            return {1: "l1", 2: "l2"}.get(self.p, f"lp:{self.p}")
        return self.kind


@dataclass(frozen=True, eq=False)
class Instance:
    """Complete graph on ``n`` cities with an exact comparison metric.

    Immutable; the key matrix is computed once on first use. Populate it
    (touch ``key_matrix``) before sharing an instance across threads.
    """

    n: int
    metric: Metric
    coords: np.ndarray | None = field(default=None, repr=False)
    name: str = ""

    def __post_init__(self):
        if self.coords is not None:
            pts = np.array(self.coords, dtype=np.int64).reshape(-1, 2)
            if pts.shape[0] != self.n:
                raise MetricError(f"{pts.shape[0]} coordinates for {self.n} cities")
            pts.setflags(write=False)
            object.__setattr__(self, "coords", pts)
        if self.metric.kind == "lp" and self.coords is None:
            raise MetricError("Lp metric needs coordinates")
        if self.metric.kind == "graphic" and len(self.metric.adjacency) != self.n:
            raise MetricError("adjacency list length differs from city count")
        if self.metric.kind == "explicit" and self.metric.matrix.shape[0] != self.n:
            raise MetricError("matrix size differs from city count")

    def point(self, u: int) -> GridPoint:
        if self.coords is None:
            raise MetricError(f"instance {self.name!r} has no coordinates")
        x, y = self.coords[u]
        return GridPoint(int(x), int(y))

    @cached_property
    def key_matrix(self) -> np.ndarray:
        m = self.metric
        if m.kind == "lp":
            c = self.coords * m.scale
            dx = np.abs(c[:, None, 0] - c[None, :, 0])
            dy = np.abs(c[:, None, 1] - c[None, :, 1])
            keys = dx ** m.p + dy ** m.p
        elif m.kind == "graphic":
            keys = graphic_all_pairs(m.adjacency) * m.scale
        else:
            keys = m.matrix.copy()
        keys = np.ascontiguousarray(keys, dtype=np.int64)
        keys.setflags(write=False)
        return keys

    @cached_property
    def _roots(self) -> tuple[np.ndarray, np.ndarray]:
        """Integer p-th roots of the keys and a mask of where they are exact."""
        keys = self.key_matrix
        p = self.metric.p if self.metric.kind == "lp" else 1
        if p == 1:
            return keys, np.ones(keys.shape, dtype=bool)
        root = np.rint(keys.astype(np.float64) ** (1.0 / p)).astype(np.int64)
        exact = root ** p == keys
        return root, exact

    @property
    def exact(self) -> bool:
        """True when every pairwise length is an exact (scaled) integer."""
        return bool(self._roots[1].all())

    @cached_property
    def length_matrix(self) -> np.ndarray:
        """Scaled integer lengths; raises InexactLengthError if any is irrational."""
        root, exact = self._roots
        if not exact.all():
            i, j = np.argwhere(~exact)[0]
            raise InexactLengthError(
                f"length between cities {i} and {j} of {self.name or 'instance'} "
                f"is not an integer under {self.metric.label}")
        return root

    def dist_key(self, u: int, v: int) -> int:
        self._check(u, v)
        return int(self.key_matrix[u, v])

    def scaled_length(self, u: int, v: int) -> int | float:
        """True length times scale: an int when exact, else a float."""
        self._check(u, v)
        root, exact = self._roots
        if exact[u, v]:
            return int(root[u, v])
        return float(self.key_matrix[u, v]) ** (1.0 / self.metric.p)

    def dist_value(self, u: int, v: int) -> Length:
        s = self.scaled_length(u, v)
        if isinstance(s, int):
            return Length(Fraction(s, self.metric.scale), True)
        return Length(s / self.metric.scale, False)

    def key_of_length(self, length: int) -> int:
        """The key an axis-aligned pair at true distance ``length`` would have."""
        scaled = length * self.metric.scale
        if self.metric.kind == "lp":
            return scaled ** self.metric.p
        return scaled

    def _check(self, u, v):
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise IndexError(f"city ids ({u}, {v}) out of range for n={self.n}")


def graphic_all_pairs(adjacency: Sequence[Sequence[int]], cap: int = GRAPHIC_CAP) -> np.ndarray:
    """Hop-distance matrix of an unweighted graph via one BFS per city."""
    n = len(adjacency)
    if n > cap:
        raise MetricError(f"graph with {n} vertices exceeds cap {cap}")
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(nb) for nb in adjacency])
    indices = np.fromiter((v for nb in adjacency for v in nb), dtype=np.int64,
                          count=int(indptr[-1]))
    if indices.size and (indices.min() < 0 or indices.max() >= n):
        raise MetricError("adjacency refers to a vertex outside the graph")
    dist = kernels.bfs_all_pairs(indptr, indices, n)
    if (dist < 0).any():
        i, j = np.argwhere(dist < 0)[0]
        raise DisconnectedError(f"graph is disconnected: no path between {i} and {j}")
    return dist


@dataclass(frozen=True)
class MetricVerdict:
    ok: bool
    violation: tuple[int, ...] | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def validate_metric(matrix, cap: int = VALIDATE_CAP) -> MetricVerdict:
    """Symmetry, zero diagonal and the triangle inequality over all triples.

    On failure ``violation`` is the first offending pair (symmetry/diagonal) or
    the lexicographically first triple ``(a, b, c)`` with
    ``d(a, c) > d(a, b) + d(b, c)``.
    """
    d = np.ascontiguousarray(matrix, dtype=np.int64)
    n = d.shape[0]
    if n > cap:
        raise MetricError(f"matrix with {n} cities exceeds the O(n^3) cap {cap}")
    if not np.array_equal(d, d.T):
        i, j = np.argwhere(d != d.T)[0]
        return MetricVerdict(False, (int(i), int(j)), "not symmetric")
    diag = np.flatnonzero(np.diag(d))
    if diag.size:
        i = int(diag[0])
        return MetricVerdict(False, (i, i), "nonzero diagonal")
    a, b, c = kernels.triangle_violation(d)
    if a >= 0:
        return MetricVerdict(False, (int(a), int(b), int(c)), "triangle inequality")
    return MetricVerdict(True)


def validate_gk_conditions(instance: Instance, k: int) -> MetricVerdict:
    """Check the two distance conditions the adversarial grid family relies on.

    Cities sharing a row or a column must be exactly their euclidean distance
    apart; any other pair must be at least ``|dx|`` apart. Both are decided on
    keys, so no floating point is involved.
    """
    if instance.coords is None:
        raise MetricError("grid conditions need coordinates")
    width = (3 ** (k + 2) - 1) // 2
    pts = instance.coords
    grid = {(x, y) for x in range(width) for y in (0, 1)}
    if instance.n != 2 * width or set(map(tuple, pts.tolist())) != grid:
        raise MetricError(f"coordinates do not form the 2 x {width} grid of level {k}")
    keys = instance.key_matrix
    dx = np.abs(pts[:, None, 0] - pts[None, :, 0])
    dy = np.abs(pts[:, None, 1] - pts[None, :, 1])
    axis = (dx == 0) | (dy == 0)
    m = instance.metric
    if m.kind == "lp":
        target = (m.scale * (dx + dy)) ** m.p
        floor = (m.scale * dx) ** m.p
    else:
        target = m.scale * (dx + dy)
        floor = m.scale * dx
    bad_i = axis & (keys != target)
    if bad_i.any():
        u, v = np.argwhere(bad_i)[0]
        return MetricVerdict(False, (int(u), int(v)), "axis-aligned pair not at euclidean distance")
    bad_ii = ~axis & (keys < floor)
    if bad_ii.any():
        u, v = np.argwhere(bad_ii)[0]
        return MetricVerdict(False, (int(u), int(v)), "off-axis pair shorter than |dx|")
    return MetricVerdict(True)
