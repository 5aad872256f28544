"""Time the numba kernels against their pure-numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel gets one warm-up call (numba compiles on first use), then the best
of ``--repeat`` timed calls is reported per flavour.
"""
import argparse
import time

import numpy as np

from tsplab import gen_cw_instance, gen_gk, kernels
from tsplab._accel import HAS_NUMBA
from tsplab.heuristics import candidate_edges


def best_of(fn, args, repeat):
    fn(*args)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    inst, _ = gen_gk(4, "l1")
    n = inst.n
    us, vs = candidate_edges(n)
    keys = inst.key_matrix[us, vs]
    order = np.lexsort((vs, us, keys))
    us, vs, keys = us[order], vs[order], keys[order]
    picked = kernels.scan_select_py(us, vs, n, n - 1)
    cu, cv, ck = us[picked], vs[picked], keys[picked]
    yield "scan_select (gk4, 728 cities)", "scan_select", (us, vs, n, n - 1)
    yield "verify_scan (gk4 greedy run)", "verify_scan", (us, vs, keys, cu, cv, ck, n, False)

    g, _ = gen_gk(4, "graphic")
    adj = g.metric.adjacency
    indptr = np.zeros(len(adj) + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(a) for a in adj])
    indices = np.array([v for a in adj for v in a], dtype=np.int64)
    yield "bfs_all_pairs (gk4 grid graph)", "bfs_all_pairs", (indptr, indices, len(adj))

    cw, _, _ = gen_cw_instance(2)
    yield "triangle_violation (cwgk2, 81 cities)", "triangle_violation", (cw.key_matrix,)

    rng = np.random.default_rng(0)
    w = rng.integers(1, 50, size=(15, 15))
    d = np.triu(w, 1) + np.triu(w, 1).T
    yield "held_karp_table (n=15)", "held_karp_table", (d.astype(np.int64),)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':40} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for label, name, call_args in cases():
        nb = best_of(getattr(kernels, name + "_nb"), call_args, args.repeat)
        py = best_of(getattr(kernels, name + "_py"), call_args, args.repeat)
        print(f"{label:40} {nb * 1e3:9.2f}ms {py * 1e3:9.2f}ms {py / nb:7.1f}x")


if __name__ == "__main__":
    main()
