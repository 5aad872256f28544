"""Greedy edge selection and the Clarke-Wright savings heuristic.

Both heuristics are driven the same way: sort every candidate edge into
processing order (key, then the tie-break policy, then ids) and accept each
one that keeps the selection a disjoint union of paths. Scanning once is
exact, not an approximation of "pick the cheapest eligible edge": an edge that
is ineligible at some point (a saturated endpoint, or both endpoints already
connected) stays ineligible for the rest of the run.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .instances import Certificate
from .metrics import Instance


@dataclass(frozen=True)
class TieBreak:
    """How edges of equal key are ordered.

    ``lex``: by (min id, max id). ``cert``: edges of ``certificate`` first in
    certificate order, then lex. ``seed``: a seeded random permutation.
    """

    policy: str = "lex"
    certificate: Certificate | None = None
    seed: int | None = None

    @classmethod
    def lexicographic(cls) -> "TieBreak":
        return cls("lex")

    @classmethod
    def certificate_first(cls, cert: Certificate) -> "TieBreak":
        return cls("cert", certificate=cert)

    @classmethod
    def seeded(cls, seed: int) -> "TieBreak":
        return cls("seed", seed=int(seed))

    def rank(self, us: np.ndarray, vs: np.ndarray, n: int) -> np.ndarray:
        """Secondary sort key for the candidate edges ``(us[i], vs[i])``, us < vs."""
        if self.policy == "lex":
            return np.zeros(us.shape[0], dtype=np.int64)
        if self.policy == "seed":
            rng = np.random.default_rng(self.seed)
            return rng.permutation(us.shape[0]).astype(np.int64)
        if self.policy == "cert":
            edges = self.certificate.edges
            rank = np.full(us.shape[0], len(edges), dtype=np.int64)
            code = us * n + vs
            pos = {}
            for i, (a, b) in enumerate(edges):
                a, b = min(a, b), max(a, b)
                pos.setdefault(a * n + b, i)
            if pos:
                keys = np.fromiter(pos.keys(), dtype=np.int64, count=len(pos))
                vals = np.fromiter(pos.values(), dtype=np.int64, count=len(pos))
                order = np.argsort(code)
                found = np.searchsorted(code, keys, sorter=order)
                found = np.clip(found, 0, code.shape[0] - 1)
                hit = code[order[found]] == keys
                rank[order[found[hit]]] = vals[hit]
            return rank
        raise ValueError(f"unknown tie-break policy {self.policy!r}")


@dataclass(frozen=True)
class Tour:
    order: tuple[int, ...]
    length_scaled: int | float
    exact: bool
    scale: int
    trace: tuple[tuple[int, int, int], ...]  # (u, v, key or savings) per acceptance

    @property
    def length(self) -> Fraction | float:
        if self.exact:
            return Fraction(self.length_scaled, self.scale)
        return self.length_scaled / self.scale

    @property
    def edges(self) -> list[tuple[int, int]]:
        o = self.order
        return [(o[i], o[(i + 1) % len(o)]) for i in range(len(o))]


def tour_length(instance: Instance, order) -> tuple[int | float, bool]:
    """Scaled length of the cyclic ``order``; exact int when possible."""
    total = 0
    exact = True
    for i in range(len(order)):
        s = instance.scaled_length(order[i], order[(i + 1) % len(order)])
        if not isinstance(s, int):
            exact = False
        total += s
    return total, exact


def _cycle_from_edges(n: int, edges, start: int) -> tuple[int, ...]:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    order = [start]
    prev, cur = -1, start
    first = min(adj[start])
    while True:
        nxt = first if prev == -1 else (adj[cur][0] if adj[cur][0] != prev else adj[cur][1])
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    if len(order) != n:
        raise RuntimeError("selected edges do not form a Hamiltonian cycle")
    return tuple(order)


def candidate_edges(n: int, exclude: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    us, vs = np.triu_indices(n, 1)
    us = us.astype(np.int64)
    vs = vs.astype(np.int64)
    if exclude is not None:
        keep = (us != exclude) & (vs != exclude)
        us, vs = us[keep], vs[keep]
    return us, vs


def _process_order(primary, us, vs, tie: TieBreak, n):
    return np.lexsort((vs, us, tie.rank(us, vs, n), primary))


def greedy_tour(instance: Instance, tie: TieBreak | None = None) -> Tour:
    """Repeatedly add a cheapest edge that keeps the selection a subgraph of a
    tour. The cycle-closing edge only becomes eligible once ``n - 1`` edges
    form a Hamiltonian path."""
    n = instance.n
    if n < 3:
        raise ValueError(f"a tour needs at least 3 cities, got {n}")
    tie = tie or TieBreak.lexicographic()
    keys_m = instance.key_matrix
    us, vs = candidate_edges(n)
    keys = keys_m[us, vs]
    order = _process_order(keys, us, vs, tie, n)
    su, sv, sk = us[order], vs[order], keys[order]
    picked = kernels.scan_select(su, sv, n, n - 1)
    trace = [(int(su[i]), int(sv[i]), int(sk[i])) for i in picked]
    deg = np.zeros(n, dtype=np.int64)
    for u, v, _ in trace:
        deg[u] += 1
        deg[v] += 1
    a, b = (int(x) for x in np.flatnonzero(deg == 1))
    trace.append((a, b, int(keys_m[a, b])))
    cycle = _cycle_from_edges(n, [(u, v) for u, v, _ in trace], 0)
    length, exact = tour_length(instance, cycle)
    return Tour(cycle, length, exact, instance.metric.scale, tuple(trace))


def savings(instance: Instance, hub: int, a: int, b: int) -> int:
    """Scaled length saved by short-cutting ``a`` and ``b`` past the hub."""
    if len({hub, a, b}) != 3:
        raise ValueError(f"savings needs three distinct cities, got hub={hub}, a={a}, b={b}")
    instance._check(a, b)
    instance._check(hub, hub)
    try:
        L = instance.length_matrix
    except ValueError as exc:
        raise ValueError(f"savings requires exact lengths: {exc}") from exc
    return int(L[a, hub] + L[b, hub] - L[a, b])


def savings_matrix(instance: Instance, hub: int) -> np.ndarray:
    L = instance.length_matrix
    return L[:, hub][:, None] + L[hub, :][None, :] - L


def clarke_wright(instance: Instance, hub: int, tie: TieBreak | None = None) -> Tour:
    """Start from doubled hub edges to every other city and apply short-cuts
    in nonincreasing savings order, skipping any pair that would give a city
    a third non-hub neighbour or close a cycle away from the hub."""
    n = instance.n
    if n < 4:
        raise ValueError(f"Clarke-Wright needs at least 4 cities, got {n}")
    if not 0 <= hub < n:
        raise IndexError(f"hub {hub} out of range for n={n}")
    tie = tie or TieBreak.lexicographic()
    try:
        sav_m = savings_matrix(instance, hub)
    except ValueError as exc:
        raise ValueError(f"Clarke-Wright requires exact lengths: {exc}") from exc
    us, vs = candidate_edges(n, exclude=hub)
    sav = sav_m[us, vs]
    order = _process_order(-sav, us, vs, tie, n)
    su, sv, ss = us[order], vs[order], sav[order]
    picked = kernels.scan_select(su, sv, n, n - 2)
    trace = tuple((int(su[i]), int(sv[i]), int(ss[i])) for i in picked)
    deg = np.zeros(n, dtype=np.int64)
    for u, v, _ in trace:
        deg[u] += 1
        deg[v] += 1
    deg[hub] = 2
    ends = [int(x) for x in np.flatnonzero(deg == 1)]
    edges = [(u, v) for u, v, _ in trace] + [(hub, ends[0]), (hub, ends[1])]
    cycle = _cycle_from_edges(n, edges, hub)
    length, exact = tour_length(instance, cycle)
    return Tour(cycle, length, exact, instance.metric.scale, trace)
