"""Experiments reproducing the approximation-ratio tables, and report output.

Every pass/fail decision is made on ``Fraction``s or Python integers. The
logarithmic bounds are compared by exponentiating: for ``ratio = a/b``,
``ratio >= (2/9) log3(n+1)`` iff ``3**(9a) >= (n+1)**(2b)``.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .certificates import Verdict, certificate_stats, verify_cw_run, verify_greedy_run
from .exact import family_opt, held_karp
from .heuristics import TieBreak, clarke_wright, greedy_tour
from .instances import (GK_CAP, cw_certificate, gen_cw_instance, gen_gk, gen_one_two,
                        gk_certificate, gk_partial_length, one_two_certificate)
from .metrics import Instance, Metric

GK_DESK_CAP = 4
CW_DESK_CAP = 3

CSV_HEADER = ("param,n,heuristic_len,partial_len,opt,opt_tag,"
              "ratio_num,ratio_den,paper_bound_num,paper_bound_den")


class BoundViolation(AssertionError):
    """A ratio claim did not hold (exit status 2)."""


class VerificationFailed(RuntimeError):
    """A certificate did not verify (exit status 3)."""

    def __init__(self, label: str, verdict: Verdict | None = None, detail: str = ""):
        self.verdict = verdict
        msg = f"{label}: " + (verdict.describe() if verdict is not None else detail)
        super().__init__(msg)


@dataclass
class ExperimentRow:
    param: int
    n: int
    heuristic_len: int | float
    partial_len: int | None
    opt: int
    opt_tag: str
    ratio: Fraction
    paper_bound: Fraction
    extra: dict = field(default_factory=dict)

    def csv_fields(self) -> list:
        partial = "" if self.partial_len is None else self.partial_len
        heur = self.heuristic_len
        if isinstance(heur, float):
            heur = f"{heur:.6f}"
        return [self.param, self.n, heur, partial, self.opt, self.opt_tag,
                self.ratio.numerator, self.ratio.denominator,
                self.paper_bound.numerator, self.paper_bound.denominator]


def exp_at_least_log(ratio: Fraction, coef: Fraction, arg: int) -> bool:
    """Exact test of ``ratio >= coef * log3(arg)`` for positive ``coef``."""
    # ratio/coef >= log3(arg)  <=>  3**(ratio/coef) >= arg
    q = ratio / coef
    return 3 ** q.numerator >= arg ** q.denominator


def _require(cond: bool, msg: str):
    if not cond:
        raise BoundViolation(msg)


def run_gk_experiment(k_max: int, kind="graphic") -> list[ExperimentRow]:
    """Greedy on the grid family: certified partial path versus optimum."""
    if not 0 <= k_max <= GK_CAP:
        raise ValueError(f"k_max must lie in 0..{GK_CAP}, got {k_max}")
    rows = []
    for k in range(k_max + 1):
        inst, meta = gen_gk(k, kind)
        cert = gk_certificate(k)
        verdict = verify_greedy_run(inst, cert)
        if not verdict:
            raise VerificationFailed(f"gk k={k} {inst.metric.label}", verdict)
        audit = certificate_stats(inst, cert)
        if not audit.ok:
            raise VerificationFailed(f"gk k={k} audit", detail="; ".join(audit.failures))
        tour = greedy_tour(inst, TieBreak.certificate_first(cert))
        partial = audit.stats.total_length_scaled
        opt = family_opt("gk", k)["exact"]
        ratio = Fraction(partial, opt)
        linear = Fraction(2 * k + 8, 9)
        log_ok = exp_at_least_log(ratio, Fraction(2, 9), meta.n + 1)
        if k >= 1:
            _require(ratio > linear, f"gk k={k}: ratio {ratio} <= {linear}")
            _require(log_ok, f"gk k={k}: ratio {ratio} < (2/9) log3({meta.n + 1})")
        full_ratio = (Fraction(tour.length_scaled, opt) if tour.exact
                      else tour.length_scaled / opt)
        rows.append(ExperimentRow(k, meta.n, tour.length_scaled, partial, opt, "exact",
                                  ratio, linear,
                                  {"full_ratio": full_ratio, "log_bound_ok": log_ok,
                                   "metric": inst.metric.label}))
    return rows


def run_cw_experiment(k_max: int) -> list[ExperimentRow]:
    """Clarke-Wright on the hub instances. ``partial_len`` is the certified
    shortcut path plus both hub edges; ``opt`` is the paper-bound optimum."""
    if not 0 <= k_max <= GK_CAP:
        raise ValueError(f"k_max must lie in 0..{GK_CAP}, got {k_max}")
    rows = []
    for k in range(k_max + 1):
        inst, meta, hub = gen_cw_instance(k)
        cert = cw_certificate(k)
        verdict = verify_cw_run(inst, hub.hub_id, cert)
        if not verdict:
            raise VerificationFailed(f"cwgk k={k}", verdict)
        tour = clarke_wright(inst, hub.hub_id, TieBreak.certificate_first(cert))
        accepted = [(min(u, v), max(u, v)) for u, v, _ in tour.trace[:len(cert)]]
        if accepted != [(min(u, v), max(u, v)) for u, v in cert.edges]:
            raise VerificationFailed(f"cwgk k={k}", detail="run does not start with the certificate")
        numerator = 2 * gk_partial_length(k) + 2 * hub.hub_len_scaled
        bounds = family_opt("cwgk", k)
        denominator = bounds["paper-bound"]
        ratio = Fraction(numerator, denominator)
        linear = Fraction(2 * k + 17, 18)
        extra = {"constructive": bounds["constructive"],
                 "measured_ratio_constructive": Fraction(tour.length_scaled, bounds["constructive"]),
                 "log_bound_ok": exp_at_least_log(ratio, Fraction(1, 9), inst.n)}
        if k >= 1:
            _require(ratio >= linear, f"cwgk k={k}: ratio {ratio} < {linear}")
            _require(extra["log_bound_ok"], f"cwgk k={k}: ratio {ratio} < (1/9) log3({inst.n})")
        _require(tour.length_scaled >= numerator,
                 f"cwgk k={k}: tour {tour.length_scaled} shorter than its certified part")
        if k == 0:
            hk = held_karp(inst).length_scaled
            extra["held_karp"] = hk
            _require(tour.length_scaled == hk,
                     f"cwgk k=0: measured {tour.length_scaled} != Held-Karp {hk}")
        rows.append(ExperimentRow(k, inst.n, tour.length_scaled, numerator, denominator,
                                  "paper-bound", ratio, linear, extra))
    return rows


def _one_two_bound(n: int) -> Fraction:
    return Fraction(3, 2) - Fraction(1, 2 * n)


def run_onetwo_experiment(n_list) -> list[ExperimentRow]:
    rows = []
    for n in n_list:
        if n % 2 == 0 or not 5 <= n <= 18:
            raise ValueError(f"1-2 experiment needs odd 5 <= n <= 18, got {n}")
        inst = gen_one_two(n)
        cert = one_two_certificate(n)
        verdict = verify_greedy_run(inst, cert)
        if not verdict:
            raise VerificationFailed(f"onetwo n={n}", verdict)
        tour = greedy_tour(inst, TieBreak.certificate_first(cert))
        opt = held_karp(inst).length_scaled
        _require(tour.length_scaled == (3 * n - 1) // 2,
                 f"onetwo n={n}: greedy {tour.length_scaled} != {(3 * n - 1) // 2}")
        _require(opt == family_opt("onetwo", n)["exact"], f"onetwo n={n}: optimum {opt} != {n}")
        ratio = Fraction(tour.length_scaled, opt)
        bound = _one_two_bound(n)
        _require(ratio == bound, f"onetwo n={n}: ratio {ratio} != {bound}")
        rows.append(ExperimentRow(n, n, tour.length_scaled, verdict.stats.total_length_scaled,
                                  opt, "exact", ratio, bound))
    return rows


@dataclass
class RandomOneTwoReport:
    n: int
    trials: int
    max_ratio: Fraction
    worst: tuple[int, int]  # (greedy, opt) of the worst trial
    nonoptimal: int
    ratio_violations: int
    structure_violations: int


def random_one_two_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    upper = rng.integers(1, 3, size=(n, n))
    mat = np.triu(upper, 1)
    return mat + mat.T


def random_onetwo_check(n: int, trials: int, seed: int, strict: bool = True) -> RandomOneTwoReport:
    """Greedy (random tie-breaks) against Held-Karp on random 1-2 instances.

    Checks the ratio bound and, on every non-optimal run, that the optimum
    uses at most ``2m - 1`` unit edges when greedy used ``m``.
    """
    if not 5 <= n <= 12:
        raise ValueError(f"random 1-2 check supports 5 <= n <= 12, got {n}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    bound = _one_two_bound(n)
    max_ratio, worst = Fraction(0), (0, 0)
    nonopt = bad_ratio = bad_struct = 0
    for _ in range(trials):
        inst = Instance(n, Metric.explicit(random_one_two_matrix(n, rng)))
        tie_seed = int(rng.integers(0, 2 ** 63 - 1))
        tour = greedy_tour(inst, TieBreak.seeded(tie_seed))
        opt = held_karp(inst)
        ratio = Fraction(tour.length_scaled, opt.length_scaled)
        if ratio > max_ratio:
            max_ratio, worst = ratio, (tour.length_scaled, opt.length_scaled)
        if ratio > bound:
            bad_ratio += 1
        if ratio > 1:
            nonopt += 1
            L = inst.length_matrix
            m_units = sum(1 for u, v in tour.edges if L[u, v] == 1)
            o = opt.tour
            k_units = sum(1 for i in range(n) if L[o[i], o[(i + 1) % n]] == 1)
            if k_units > 2 * m_units - 1:
                bad_struct += 1
    report = RandomOneTwoReport(n, trials, max_ratio, worst, nonopt, bad_ratio, bad_struct)
    if strict:
        _require(bad_ratio == 0, f"random 1-2 n={n}: {bad_ratio} trials exceed {bound}")
        _require(bad_struct == 0, f"random 1-2 n={n}: {bad_struct} trials break k <= 2m - 1")
    return report


def run_onetwo_random(n_list, trials: int, seed: int) -> list[ExperimentRow]:
    rows = []
    for i, n in enumerate(n_list):
        rep = random_onetwo_check(n, trials, seed + i)
        rows.append(ExperimentRow(n, n, rep.worst[0], None, rep.worst[1], "exact",
                                  rep.max_ratio, _one_two_bound(n),
                                  {"trials": trials, "nonoptimal": rep.nonoptimal}))
    return rows


def emit_report(rows: list[ExperimentRow], fmt: str = "csv") -> str:
    if not rows:
        raise ValueError("no rows to report")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        for row in rows:
            writer.writerow(row.csv_fields())
        return buf.getvalue()
    if fmt == "svg":
        return _svg(rows)
    raise ValueError(f"unknown report format {fmt!r}")


def _svg(rows, width=640, height=400, pad=48) -> str:
    xs = [math.log(r.n, 3) for r in rows]
    series = {
        "ratio": [float(r.ratio) for r in rows],
        "bound": [float(r.paper_bound) for r in rows],
    }
    colors = {"ratio": "#1f77b4", "bound": "#d62728"}
    ys = [y for vals in series.values() for y in vals]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    x1 = x1 if x1 > x0 else x0 + 1
    y1 = y1 if y1 > y0 else y0 + 1

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
           f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
           f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
           f'<text x="{width / 2:.0f}" y="{height - 12}" text-anchor="middle" '
           f'font-size="12">log3(n)</text>',
           f'<text x="14" y="{height / 2:.0f}" text-anchor="middle" font-size="12" '
           f'transform="rotate(-90 14 {height / 2:.0f})">ratio</text>']
    for i, (name, vals) in enumerate(series.items()):
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, vals))
        out.append(f'<polyline fill="none" stroke="{colors[name]}" stroke-width="2" '
                   f'points="{pts}"><title>{name}</title></polyline>')
        out.append(f'<text x="{width - pad - 60}" y="{pad + 16 * i}" font-size="12" '
                   f'fill="{colors[name]}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
