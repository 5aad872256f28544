"""Command line entry point: ``tsplab <subcommand>`` (or ``python -m tsplab``).

Exit status: 0 success, 2 ratio assertion failed, 3 certificate verification
failed, 4 I/O or parse error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .certificates import CertificateError, certificate_stats, verify_cw_run, verify_greedy_run
from .exact import brute_force, held_karp
from .harness import (CW_DESK_CAP, GK_DESK_CAP, BoundViolation, VerificationFailed,
                      emit_report, run_cw_experiment, run_gk_experiment, run_onetwo_experiment,
                      run_onetwo_random)
from .heuristics import TieBreak, clarke_wright, greedy_tour
from .instances import (cw_certificate, gen_cw_instance, gen_gk, gen_one_two, gk_certificate,
                        one_two_certificate)
from .tsplib import TsplibError, read_certificate, read_tsplib, write_certificate, write_tsplib

EXIT_OK, EXIT_ASSERT, EXIT_VERIFY, EXIT_IO = 0, 2, 3, 4


def _read(path: str) -> str:
    return Path(path).read_text()


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_generate(args) -> int:
    if args.family == "gk":
        inst, meta = gen_gk(args.param, args.metric)
        cert = gk_certificate(args.param)
        info = f"s_k={meta.s_id} r_k={meta.r_id}"
    elif args.family == "cwgk":
        inst, meta, hub = gen_cw_instance(args.param)
        cert = cw_certificate(args.param)
        info = f"hub={hub.hub_id} s_k={meta.s_id} r_k={meta.r_id}"
    else:
        inst = gen_one_two(args.param)
        cert = one_two_certificate(args.param)
        info = ""
    _write(args.out, write_tsplib(inst))
    if args.cert:
        _write(args.cert, write_certificate(cert))
    print(f"{inst.name}: n={inst.n} scale={inst.metric.scale} {info}".rstrip(), file=sys.stderr)
    return EXIT_OK


def _tiebreak(text: str) -> TieBreak:
    if text == "lex":
        return TieBreak.lexicographic()
    if text.startswith("cert:"):
        return TieBreak.certificate_first(read_certificate(_read(text[5:])))
    if text.startswith("seed:"):
        return TieBreak.seeded(int(text[5:]))
    raise argparse.ArgumentTypeError(f"bad --tiebreak {text!r}")


def cmd_run(args) -> int:
    inst = read_tsplib(_read(args.inp))
    tie = _tiebreak(args.tiebreak)
    if args.algo == "greedy":
        tour = greedy_tour(inst, tie)
    else:
        hub = inst.n - 1 if args.hub is None else args.hub
        tour = clarke_wright(inst, hub, tie)
    flag = "exact" if tour.exact else "inexact"
    print(f"length_scaled {tour.length_scaled} ({flag}) scale {tour.scale} length {tour.length}")
    print("tour " + " ".join(map(str, tour.order)))
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = read_tsplib(_read(args.inp))
    cert = read_certificate(_read(args.cert))
    algo = args.algo or ("cw" if cert.family == "cwgk" else "greedy")
    if algo == "cw":
        hub = inst.n - 1 if args.hub is None else args.hub
        verdict = verify_cw_run(inst, hub, cert)
    else:
        verdict = verify_greedy_run(inst, cert)
    print(verdict.describe())
    if not verdict:
        return EXIT_VERIFY
    audit = certificate_stats(inst, cert)
    for msg in audit.failures:
        print(f"AUDIT FAIL {msg}")
    if not audit.ok:
        return EXIT_VERIFY
    print(f"audit ok: endpoints={audit.endpoints} covered={audit.covered}")
    return EXIT_OK


def cmd_exact(args) -> int:
    inst = read_tsplib(_read(args.inp))
    res = held_karp(inst) if args.method == "hk" else brute_force(inst)
    flag = "exact" if res.exact else "inexact"
    print(f"optimum_scaled {res.length_scaled} ({flag}) scale {inst.metric.scale} "
          f"method {res.method}")
    print("tour " + " ".join(map(str, res.tour)))
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def cmd_experiment(args) -> int:
    if args.suite == "gk":
        rows = run_gk_experiment(GK_DESK_CAP if args.kmax is None else args.kmax, args.metric)
    elif args.suite == "cw":
        rows = run_cw_experiment(CW_DESK_CAP if args.kmax is None else args.kmax)
    elif args.suite == "onetwo":
        rows = run_onetwo_experiment(_int_list(args.nlist or "5,7,9,11,13"))
    else:
        rows = run_onetwo_random(_int_list(args.nlist or "6,8,10"), args.trials, args.seed)
    _write(args.out, emit_report(rows, args.format))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tsplab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write an adversarial instance (and certificate)")
    g.add_argument("--family", choices=["gk", "cwgk", "onetwo"], required=True)
    g.add_argument("--param", type=int, required=True, help="level k, or n for onetwo")
    g.add_argument("--metric", default="l1", help="l1 | l2 | lp:P | graphic (gk only)")
    g.add_argument("--out", required=True)
    g.add_argument("--cert")
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("run", help="run a heuristic on a TSPLIB file")
    r.add_argument("--algo", choices=["greedy", "cw"], required=True)
    r.add_argument("--in", dest="inp", required=True)
    r.add_argument("--tiebreak", default="lex", help="lex | cert:FILE | seed:N")
    r.add_argument("--hub", type=int, help="hub city id for cw (default: last city)")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="verify a certificate against an instance")
    v.add_argument("--in", dest="inp", required=True)
    v.add_argument("--cert", required=True)
    v.add_argument("--algo", choices=["greedy", "cw"])
    v.add_argument("--hub", type=int)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("exact", help="exact optimum of a small instance")
    e.add_argument("--in", dest="inp", required=True)
    e.add_argument("--method", choices=["hk", "brute"], default="hk")
    e.set_defaults(func=cmd_exact)

    x = sub.add_parser("experiment", help="ratio tables as CSV or SVG")
    x.add_argument("--suite", choices=["gk", "cw", "onetwo", "onetwo-random"], required=True)
    x.add_argument("--kmax", type=int)
    x.add_argument("--nlist")
    x.add_argument("--metric", default="graphic", help="metric for the gk suite")
    x.add_argument("--trials", type=int, default=200)
    x.add_argument("--seed", type=int, default=42)
    x.add_argument("--format", choices=["csv", "svg"], default="csv")
    x.add_argument("--out")
    x.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BoundViolation as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    except (VerificationFailed, CertificateError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (OSError, TsplibError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
