"""Certificate verification and structural audits.

A certificate passes ``verify_greedy_run`` when replaying it edge by edge,
every edge is eligible for the greedy heuristic and no eligible edge of the
whole instance is strictly cheaper. Equal keys are fine: greedy may break ties
any way it likes, and ``TieBreak.certificate_first`` then reproduces the run.
``verify_cw_run`` is the same replay with savings in place of lengths
(largest first) and without the final closing edge.

Two verifiers ship. ``method="fast"`` keeps one pointer into the sorted edge
list; ``method="brute"`` rescans every edge at every step and serves as its
oracle.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .heuristics import candidate_edges, savings_matrix
from .instances import Certificate, gk_meta, gk_partial_length
from .metrics import Instance


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class CertStats:
    edge_count: int = 0
    total_length_scaled: int | float = 0
    length_histogram: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Verdict:
    passed: bool
    fail_step: int | None = None  # 1-based
    witness: tuple[int, int] | None = None
    reason: str = ""
    stats: CertStats = CertStats()

    def __bool__(self):
        return self.passed

    def describe(self) -> str:
        s = self.stats
        if self.passed:
            return (f"PASS edges={s.edge_count} total={s.total_length_scaled} "
                    f"histogram={dict(sorted(s.length_histogram.items()))}")
        return f"FAIL step={self.fail_step} reason={self.reason} witness={self.witness}"


def _cert_arrays(instance: Instance, cert: Certificate, hub: int | None = None):
    n = instance.n
    seen = set()
    for i, (u, v) in enumerate(cert.edges, start=1):
        if not (0 <= u < n and 0 <= v < n):
            raise CertificateError(f"edge {i} ({u}, {v}) has a city id outside 0..{n - 1}")
        if u == v:
            raise CertificateError(f"edge {i} is a loop at city {u}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise CertificateError(f"edge {i} ({u}, {v}) repeats an earlier edge")
        if hub is not None and hub in e:
            raise CertificateError(f"edge {i} ({u}, {v}) touches the hub {hub}")
        seen.add(e)
    arr = np.array(cert.edges, dtype=np.int64).reshape(-1, 2)
    return arr[:, 0].copy(), arr[:, 1].copy()


def _stats(instance: Instance, edges) -> CertStats:
    hist = Counter()
    total = 0
    edges = list(edges)
    for u, v in edges:
        s = instance.scaled_length(int(u), int(v))
        hist[s] += 1
        total += s
    return CertStats(len(edges), total, dict(hist))


def _eligible_mask(us, vs, deg, parent):
    roots = np.array([_find(parent, x) for x in range(parent.shape[0])])
    return (deg[us] < 2) & (deg[vs] < 2) & (roots[us] != roots[vs])


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _brute_replay(n, us, vs, keys, cu, cv, ck, allow_closing):
    """Reference replay: full scan of every candidate at every step."""
    parent = np.arange(n)
    deg = np.zeros(n, dtype=np.int64)
    for t in range(cu.shape[0]):
        u, v = int(cu[t]), int(cv[t])
        if deg[u] >= 2 or deg[v] >= 2:
            return t + 1, kernels.DEGREE, -1
        ru, rv = _find(parent, u), _find(parent, v)
        if allow_closing and t == n - 1:
            deg[u] += 1
            deg[v] += 1
            continue
        if ru == rv:
            return t + 1, kernels.CYCLE, -1
        mask = _eligible_mask(us, vs, deg, parent)
        best = int(keys[mask].min())
        if best < ck[t]:
            cand = np.flatnonzero(mask & (keys == best))
            return t + 1, kernels.CHEAPER, int(cand[0])
        parent[ru] = rv
        deg[u] += 1
        deg[v] += 1
    return 0, kernels.OK, -1


_REASONS = {
    kernels.DEGREE: "degree: an endpoint already has two selected edges",
    kernels.CYCLE: "cycle: endpoints are already connected",
    kernels.CHEAPER: "a strictly better eligible edge exists",
}


def _replay(instance, cu, cv, ck, us, vs, keys, allow_closing, method, label, sign):
    n = instance.n
    if method == "fast":
        order = np.argsort(keys, kind="stable")
        us, vs, keys = us[order], vs[order], keys[order]
        step, code, w = kernels.verify_scan(us, vs, keys, cu, cv, ck, n, allow_closing)
    elif method == "brute":
        step, code, w = _brute_replay(n, us, vs, keys, cu, cv, ck, allow_closing)
    else:
        raise ValueError(f"unknown verification method {method!r}")
    step = int(step)
    done = len(cu) if step == 0 else step - 1
    stats = _stats(instance, zip(cu[:done], cv[:done]))
    if step == 0:
        return Verdict(True, stats=stats)
    if code == kernels.CHEAPER:
        witness = (int(us[w]), int(vs[w]))
        reason = (f"{_REASONS[code]}: {witness} with {label} "
                  f"{sign * int(keys[w])} vs {sign * int(ck[step - 1])}")
    else:
        witness = (int(cu[step - 1]), int(cv[step - 1]))
        reason = _REASONS[code]
    return Verdict(False, step, witness, reason, stats)


def verify_greedy_run(instance: Instance, cert: Certificate, method: str = "fast") -> Verdict:
    cu, cv = _cert_arrays(instance, cert)
    K = instance.key_matrix
    us, vs = candidate_edges(instance.n)
    return _replay(instance, cu, cv, K[cu, cv], us, vs, K[us, vs],
                   allow_closing=True, method=method, label="key", sign=1)


def verify_cw_run(instance: Instance, hub: int, cert: Certificate, method: str = "fast") -> Verdict:
    if not 0 <= hub < instance.n:
        raise CertificateError(f"hub {hub} out of range for n={instance.n}")
    cu, cv = _cert_arrays(instance, cert, hub=hub)
    S = savings_matrix(instance, hub)
    us, vs = candidate_edges(instance.n, exclude=hub)
    # largest savings first == smallest negated savings first
    return _replay(instance, cu, cv, -S[cu, cv], us, vs, -S[us, vs],
                   allow_closing=False, method=method, label="savings", sign=-1)


@dataclass(frozen=True)
class Audit:
    stats: CertStats
    endpoints: tuple[int, ...]
    covered: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def certificate_stats(instance: Instance, cert: Certificate) -> Audit:
    """Edge count, exact total, length histogram, and for the grid families the
    structural claims: a single path over every grid city from ``s_k`` to
    ``r_k`` whose edge lengths are powers of three up to ``3**k``."""
    cu, cv = _cert_arrays(instance, cert)
    n = instance.n
    parent = np.arange(n)
    deg = np.zeros(n, dtype=np.int64)
    for i, (u, v) in enumerate(zip(cu.tolist(), cv.tolist()), start=1):
        if deg[u] >= 2 or deg[v] >= 2:
            raise CertificateError(f"edge {i} ({u}, {v}) raises a degree above 2")
        ru, rv = _find(parent, u), _find(parent, v)
        if ru == rv:
            raise CertificateError(f"edge {i} ({u}, {v}) closes a cycle")
        parent[ru] = rv
        deg[u] += 1
        deg[v] += 1
    stats = _stats(instance, zip(cu, cv))
    endpoints = tuple(int(x) for x in np.flatnonzero(deg == 1))
    covered = int(np.count_nonzero(deg))
    failures = []
    if stats.total_length_scaled != cert.expected_length:
        failures.append(f"total {stats.total_length_scaled} != expected {cert.expected_length}")
    if cert.family in ("gk", "cwgk"):
        k = cert.param
        meta = gk_meta(k)
        unit = 1 if cert.family == "gk" else 2
        if cert.expected_length != unit * gk_partial_length(k):
            failures.append(f"expected length {cert.expected_length} != "
                            f"{unit * gk_partial_length(k)} for level {k}")
        if covered != meta.n or len(cert.edges) != meta.n - 1:
            failures.append(f"covers {covered} cities with {len(cert.edges)} edges; "
                            f"need a path over all {meta.n}")
        if set(endpoints) != {meta.s_id, meta.r_id}:
            failures.append(f"endpoints {endpoints} != s_k, r_k = {(meta.s_id, meta.r_id)}")
        allowed = {unit * 3 ** i for i in range(k + 1)}
        extra = sorted(set(stats.length_histogram) - allowed, key=float)
        if extra:
            failures.append(f"edge lengths {extra} not in {sorted(allowed)}")
    elif cert.family == "onetwo":
        if set(stats.length_histogram) - {1}:
            failures.append(f"edge lengths {sorted(stats.length_histogram)} are not all 1")
        if len(cert.edges) != (cert.param + 1) // 2:
            failures.append(f"{len(cert.edges)} edges, expected {(cert.param + 1) // 2}")
    return Audit(stats, endpoints, covered, tuple(failures))
