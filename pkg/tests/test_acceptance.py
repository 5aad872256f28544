"""Acceptance gate. One test per criterion; the terminal summary prints a
PASS/FAIL line for each (see conftest.py). Wall-clock limits are asserted."""
import time
from fractions import Fraction

import numpy as np

from helpers import random_instance
from tsplab import (Certificate, brute_force, certificate_stats, cli, cw_certificate,
                    gen_cw_instance, gen_gk, gen_one_two, gk_certificate, greedy_tour, held_karp,
                    one_two_certificate, verify_cw_run, verify_greedy_run)
from tsplab.harness import (exp_at_least_log, random_onetwo_check, run_cw_experiment,
                            run_gk_experiment)
from tsplab.instances import gk_meta
from tsplab.heuristics import TieBreak

KS = range(5)
KINDS = ["l1", "l2", "graphic"]


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def test_criterion_1_certificate_validity(tmp_path, capsys):
    with Clock(30):
        for k in KS:
            for kind in KINDS:
                inst, cert = tmp_path / f"g{k}{kind}.tsp", tmp_path / f"g{k}{kind}.cert"
                assert cli.main(["generate", "--family", "gk", "--param", str(k), "--metric",
                                 kind, "--out", str(inst), "--cert", str(cert)]) == 0
                assert cli.main(["verify", "--in", str(inst), "--cert", str(cert)]) == 0
                out = capsys.readouterr().out
                assert out.startswith("PASS"), out


def test_criterion_2_certificate_quantities():
    totals = []
    for k in KS:
        inst, meta = gen_gk(k, "l1")
        audit = certificate_stats(inst, gk_certificate(k))
        totals.append(audit.stats.total_length_scaled)
        assert audit.stats.total_length_scaled == (2 * k + 8) * 3 ** k - 1
        assert set(audit.endpoints) == {meta.s_id, meta.r_id}
        assert audit.covered == meta.n
        assert set(audit.stats.length_histogram) <= {3 ** i for i in range(k + 1)}
        assert audit.ok, audit.failures
    assert totals == [7, 29, 107, 377, 1295]


def test_criterion_3_greedy_ratios():
    with Clock(10):
        rows = run_gk_experiment(3)
    expected = {1: (Fraction(29, 26), Fraction(10, 9)), 2: (Fraction(107, 80), Fraction(12, 9)),
                3: (Fraction(377, 242), Fraction(14, 9))}
    for row in rows[1:]:
        ratio, bound = expected[row.param]
        assert row.ratio == ratio and ratio > bound
        assert exp_at_least_log(ratio, Fraction(2, 9), gk_meta(row.param).n + 1)


def test_criterion_4_optimum_baselines():
    rng = np.random.default_rng(4)
    with Clock(60):
        for kind in ["l1", "l2", "lp:3", "graphic"]:
            res = held_karp(gen_gk(0, kind)[0])
            assert res.exact and res.length_scaled == 8
        for _ in range(30):
            n = int(rng.integers(3, 10))
            inst = random_instance(rng, n, "explicit")
            assert brute_force(inst).length_scaled == held_karp(inst).length_scaled


def test_criterion_5_savings_ratios():
    with Clock(60):
        for k in range(4):
            inst, _, hub = gen_cw_instance(k)
            assert verify_cw_run(inst, hub.hub_id, cw_certificate(k)).passed
        rows = run_cw_experiment(3)
    for row in rows[1:]:
        assert row.ratio >= Fraction(2 * row.param + 17, 18)
    assert rows[1].ratio == Fraction(56, 53)
    assert rows[0].heuristic_len == held_karp(gen_cw_instance(0)[0]).length_scaled == 32


def test_criterion_6_one_two_family():
    with Clock(30):
        for n in (5, 7, 9, 11, 13):
            inst = gen_one_two(n)
            cert = one_two_certificate(n)
            assert verify_greedy_run(inst, cert).passed
            tour = greedy_tour(inst, TieBreak.certificate_first(cert))
            opt = held_karp(inst).length_scaled
            assert 2 * tour.length_scaled == 3 * n - 1
            assert opt == n
            assert Fraction(tour.length_scaled, opt) == Fraction(3, 2) - Fraction(1, 2 * n)


def test_criterion_7_one_two_upper_bound():
    with Clock(120):
        for i, n in enumerate((6, 8, 10)):
            rep = random_onetwo_check(n, 200, seed=42 + i, strict=False)
            assert rep.trials == 200
            assert rep.ratio_violations == 0
            assert rep.structure_violations == 0


def test_criterion_8_verifier_soundness():
    rng = np.random.default_rng(8)
    kinds = ["explicit", "raw", "l1", "l2"]
    with Clock(60):
        for i in range(50):
            n = int(rng.integers(3, 11))
            inst = random_instance(rng, n, kinds[i % len(kinds)])
            K = inst.key_matrix
            trace = [(u, v) for u, v, _ in greedy_tour(inst, TieBreak.seeded(i)).trace]
            for t in range(len(trace) + 1):
                assert verify_greedy_run(inst, Certificate("gk", 0, tuple(trace[:t]), 0))
            for t, (u, v) in enumerate(trace):
                used = set(trace[:t])
                for a in range(n):
                    for b in range(a + 1, n):
                        if K[a, b] <= K[u, v] or (a, b) in used:
                            continue
                        cert = Certificate("gk", 0, tuple(trace[:t]) + ((a, b),), 0)
                        verdict = verify_greedy_run(inst, cert)
                        assert not verdict.passed and verdict.fail_step == t + 1
