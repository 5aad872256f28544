"""Hot integer kernels.

Every kernel exists in two flavours: ``<name>_py`` (plain python/numpy, always
available) and ``<name>_nb`` (numba-compiled). The unsuffixed name is bound to
the numba flavour unless ``TSPLAB_NO_NUMBA`` is set. Both flavours return
identical results; tests/test_kernels.py holds them to that.

All kernels take int64 arrays (Held-Karp also accepts float64 lengths). Edge lists are given as parallel ``us``/``vs``
arrays already sorted into processing order.
"""
import numpy as np

from ._accel import HAS_NUMBA, USE_NUMBA, jit

INF = np.int64(1) << np.int64(60)

# verify_scan outcome codes
OK = 0
DEGREE = 1
CYCLE = 2
CHEAPER = 3


def _scan_select(us, vs, n, target):
    """Accept edges in order while they keep the selection a union of paths.

    Returns the positions (into ``us``/``vs``) of the accepted edges, stopping
    after ``target`` acceptances.
    """
    parent = np.arange(n)
    deg = np.zeros(n, dtype=np.int64)
    out = np.empty(target, dtype=np.int64)
    cnt = 0
    for i in range(us.shape[0]):
        if cnt == target:
            break
        u = us[i]
        v = vs[i]
        if deg[u] >= 2 or deg[v] >= 2:
            continue
        ru = u
        while parent[ru] != ru:
            parent[ru] = parent[parent[ru]]
            ru = parent[ru]
        rv = v
        while parent[rv] != rv:
            parent[rv] = parent[parent[rv]]
            rv = parent[rv]
        if ru == rv:
            continue
        parent[ru] = rv
        deg[u] += 1
        deg[v] += 1
        out[cnt] = i
        cnt += 1
    return out[:cnt]


def _verify_scan(us, vs, keys, cert_u, cert_v, cert_keys, n, allow_closing):
    """Replay a certificate against the min-eligible rule.

    ``us, vs, keys`` is the full candidate edge list sorted by key (ascending).
    Eligibility of a candidate only ever disappears, so a single pointer that
    skips ineligible candidates always rests on a cheapest eligible one.

    Returns ``(fail_step, code, witness)``: ``fail_step`` is 1-based (0 when the
    whole certificate passes), ``witness`` is a position in the candidate list
    for ``CHEAPER`` failures and -1 otherwise.
    """
    parent = np.arange(n)
    deg = np.zeros(n, dtype=np.int64)
    p = 0
    m = us.shape[0]
    for t in range(cert_u.shape[0]):
        u = cert_u[t]
        v = cert_v[t]
        if deg[u] >= 2 or deg[v] >= 2:
            return t + 1, DEGREE, -1
        ru = u
        while parent[ru] != ru:
            parent[ru] = parent[parent[ru]]
            ru = parent[ru]
        rv = v
        while parent[rv] != rv:
            parent[rv] = parent[parent[rv]]
            rv = parent[rv]
        if allow_closing and t == n - 1:
            # both endpoints of the Hamiltonian path: the closing edge
            deg[u] += 1
            deg[v] += 1
            continue
        if ru == rv:
            return t + 1, CYCLE, -1
        while p < m:
            a = us[p]
            b = vs[p]
            if deg[a] < 2 and deg[b] < 2:
                ra = a
                while parent[ra] != ra:
                    parent[ra] = parent[parent[ra]]
                    ra = parent[ra]
                rb = b
                while parent[rb] != rb:
                    parent[rb] = parent[parent[rb]]
                    rb = parent[rb]
                if ra != rb:
                    break
            p += 1
        if keys[p] < cert_keys[t]:
            return t + 1, CHEAPER, p
        parent[ru] = rv
        deg[u] += 1
        deg[v] += 1
    return 0, OK, -1


def _bfs_all_pairs(indptr, indices, n):
    """Hop distances from every source; -1 marks unreachable pairs."""
    dist = np.full((n, n), -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        row = dist[s]
        row[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            x = queue[head]
            head += 1
            dx = row[x] + 1
            for e in range(indptr[x], indptr[x + 1]):
                y = indices[e]
                if row[y] < 0:
                    row[y] = dx
                    queue[tail] = y
                    tail += 1
    return dist


def _triangle_violation_nb_src(d):
    n = d.shape[0]
    for a in range(n):
        for b in range(n):
            dab = d[a, b]
            for c in range(n):
                if d[a, c] > dab + d[b, c]:
                    return a, b, c
    return -1, -1, -1


def triangle_violation_py(d):
    """First (a, b, c) in lexicographic order with d[a,c] > d[a,b] + d[b,c]."""
    n = d.shape[0]
    for a in range(n):
        bad = (d[a][:, None] + d) < d[a][None, :]
        if bad.any():
            b, c = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return int(a), int(b), int(c)
    return -1, -1, -1


def _held_karp_nb_src(d):
    n = d.shape[0]
    m = n - 1
    full = 1 << m
    dp = np.empty((full, m), dtype=d.dtype)
    dp[:] = INF
    for j in range(m):
        dp[1 << j, j] = d[0, j + 1]
    for mask in range(1, full):
        for j in range(m):
            if not (mask >> j) & 1:
                continue
            cur = dp[mask, j]
            if cur >= INF:
                continue
            for k in range(m):
                if (mask >> k) & 1:
                    continue
                nm = mask | (1 << k)
                val = cur + d[j + 1, k + 1]
                if val < dp[nm, k]:
                    dp[nm, k] = val
    return dp


def held_karp_table_py(d):
    """Subset DP table ``dp[mask, j]``: cheapest path from city 0 through the
    cities in ``mask`` (bit j = city j+1) ending at city j+1. Works on int64
    or float64 lengths; unreachable states hold ``INF``.

    Vectorised one popcount layer at a time.
    """
    n = d.shape[0]
    m = n - 1
    full = 1 << m
    dp = np.full((full, m), INF, dtype=d.dtype)
    inner = d[1:, 1:]
    for j in range(m):
        dp[1 << j, j] = d[0, j + 1]
    masks = np.arange(full, dtype=np.int64)
    pop = np.zeros(full, dtype=np.int64)
    for j in range(m):
        pop += (masks >> j) & 1
    for size in range(2, m + 1):
        layer = masks[pop == size]
        for j in range(m):
            sel = layer[(layer >> j) & 1 == 1]
            prev = sel ^ (1 << j)
            cand = dp[prev] + inner[:, j][None, :]
            dp[sel, j] = np.minimum(cand.min(axis=1), INF)
    return dp


scan_select_py = _scan_select
verify_scan_py = _verify_scan
bfs_all_pairs_py = _bfs_all_pairs

if HAS_NUMBA:
    scan_select_nb = jit(_scan_select)
    verify_scan_nb = jit(_verify_scan)
    bfs_all_pairs_nb = jit(_bfs_all_pairs)
    triangle_violation_nb = jit(_triangle_violation_nb_src)
    held_karp_table_nb = jit(_held_karp_nb_src)
else:  # pragma: no cover
    scan_select_nb = scan_select_py
    verify_scan_nb = verify_scan_py
    bfs_all_pairs_nb = bfs_all_pairs_py
    triangle_violation_nb = triangle_violation_py
    held_karp_table_nb = held_karp_table_py

if USE_NUMBA:
    scan_select = scan_select_nb
    verify_scan = verify_scan_nb
    bfs_all_pairs = bfs_all_pairs_nb
    triangle_violation = triangle_violation_nb
    held_karp_table = held_karp_table_nb
else:
    scan_select = scan_select_py
    verify_scan = verify_scan_py
    bfs_all_pairs = bfs_all_pairs_py
    triangle_violation = triangle_violation_py
    held_karp_table = held_karp_table_py
