"""Command line front end.

Subcommands: canonicalize, gabor, zak, sigma, wilson, demo-hex, selftest.
Reports are JSON on stdout with sorted keys, so identical inputs (and
--seed) produce byte-identical output; wall time goes to stderr.  Exit
codes: 0 success / verdict true, 1 verdict false, 2 usage error,
3 numerical failure.  The environment variable WILSON_TOL overrides the
default tolerance 1e-9.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import gabor, metaplectic, ring, wilson, zak
from .rng import SplitMix64
from .signal import read_window_csv, write_window_csv

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def default_tol() -> float:
    try:
        return float(os.environ.get("WILSON_TOL", "1e-9"))
    except ValueError:
        return 1e-9


def parse_lattice(text: str) -> ring.CanonicalFinite:
    try:
        L, p, b = (int(x) for x in text.split(","))
        return ring.CanonicalFinite(L, p, b)
    except (ValueError, ring.LatticeError) as exc:
        raise SystemExit(f"bad --lattice {text!r}: {exc}") from exc


def emit(report: dict, t0: float) -> None:
    print(json.dumps(report, sort_keys=True))
    print(f"wall time: {time.perf_counter() - t0:.3f} s", file=sys.stderr)


def cmd_canonicalize(args, t0: float) -> int:
    entries = [Fraction(x) for x in args.matrix.split(",")]
    if len(entries) != 4:
        raise SystemExit("--matrix expects a,b,c,d")
    a, b, c, d = entries
    if args.domain == "finite":
        if args.L is None:
            raise SystemExit("--L is required for the finite domain")
        A = ring.GeneratorMatrix(a, b, c, d, domain="finite", L=args.L)
        out = ring.canonical_finite(A).to_json()
    elif args.domain == "discrete":
        A = ring.GeneratorMatrix(a, b, c, d, domain="discrete")
        out = ring.canonical_discrete(A).to_json()
    else:
        A = ring.GeneratorMatrix(a, b, c, d, domain="real")
        out = ring.hnf_real(A).to_json()
    emit(out, t0)
    return EXIT_OK


def cmd_gabor(args, t0: float) -> int:
    lat = parse_lattice(args.lattice)
    g = read_window_csv(args.window)
    gt = gabor.tighten(g, lat, fourier_twist=args.fourier_twist)
    write_window_csv(args.out, gt)
    dev = gabor.tightness_deviation(gabor.gabor_system(gt, lat), 2.0)
    emit({"command": "gabor tighten", "lattice": lat.to_json(),
          "tight_deviation": dev, "out": args.out}, t0)
    return EXIT_OK


def cmd_zak(args, t0: float) -> int:
    lat = parse_lattice(args.lattice)
    if lat.b != 0:
        raise SystemExit("zak check applies to rectangular lattices (b = 0)")
    g = read_window_csv(args.window)
    tol = args.tol
    qh, qd = zak.cond_quadrature(g, lat.p, tol)
    ch, cd = zak.cond_correlation(g, lat.p, tol)
    emit({"command": "zak check", "lattice": lat.to_json(),
          "quadrature": {"holds": qh, "max_deviation": qd},
          "correlation": {"holds": ch, "max_deviation": cd}, "tol": tol}, t0)
    return EXIT_OK if (qh and ch) else EXIT_FALSE


def cmd_sigma(args, t0: float) -> int:
    lat = parse_lattice(args.lattice)
    sp = metaplectic.sigma_params(lat)
    emit(sp.to_json(), t0)
    return EXIT_OK


def cmd_wilson_build(args, t0: float) -> int:
    if args.setting != "finite":
        raise SystemExit("only --setting finite is supported by the CLI")
    lat = parse_lattice(args.lattice)
    g = read_window_csv(args.window)
    sys_ = wilson.wilson_finite(g, lat)
    with open(args.out, "w") as fh:
        fh.write("m,n,index,re,im\n")
        for (m, n), row in zip(sys_.index_set, sys_.basis):
            for l, v in enumerate(row):
                fh.write(f"{m},{n},{l},{v.real:.17g},{v.imag:.17g}\n")
    emit({"command": "wilson build", "lattice": lat.to_json(),
          "elements": len(sys_.index_set), "out": args.out}, t0)
    return EXIT_OK


def cmd_wilson_verify(args, t0: float) -> int:
    lat = parse_lattice(args.lattice)
    g = read_window_csv(args.window)
    dev = wilson.gram_deviation(wilson.wilson_finite(g, lat))
    holds = dev <= args.tol
    emit({"command": "wilson verify", "lattice": lat.to_json(),
          "orthonormal": holds, "gram_deviation": dev, "tol": args.tol}, t0)
    return EXIT_OK if holds else EXIT_FALSE


def cmd_demo_hex(args, t0: float) -> int:
    rep = wilson.wilson_continuous_demo(args.nu, args.L)
    if args.out:
        write_window_csv(args.out, rep.window)
    out = rep.to_json()
    out["command"] = "demo-hex"
    if args.out:
        out["out"] = args.out
    emit(out, t0)
    return EXIT_OK


def cmd_selftest(args, t0: float) -> int:
    """Small deterministic sweep of the library invariants."""
    rng = SplitMix64(args.seed)
    checks = {}

    # canonicalization round trips on random unimodular scrambles
    ok = True
    for L in (4, 8, 12):
        for _ in range(10):
            lat = _random_lattice(rng, L)
            A = _scramble(rng, lat)
            can = ring.canonical_finite(A)
            ok = ok and can == lat and \
                ring.lattice_points_finite(A) == ring.lattice_points_finite(can)
    checks["canonical_finite_roundtrip"] = ok

    # tighten -> tight, Wilson Gram = identity (rectangular)
    tol = args.tol
    ok = True
    worst = 0.0
    for L, p in ((8, 1), (8, 2), (12, 2), (16, 4)):
        lat = ring.CanonicalFinite(L, p, 0)
        g = rng.real_dft_window(L)
        gt = gabor.tighten(g, lat)
        dev = wilson.gram_deviation(wilson.wilson_finite(gt, lat))
        worst = max(worst, dev)
        ok = ok and dev <= tol
    checks["rectangular_wilson_onb"] = ok
    checks["rectangular_wilson_onb_dev"] = worst

    # four-way equivalence on an aligned sheared lattice
    lat = ring.CanonicalFinite(8, 1, 3)
    sp = metaplectic.sigma_params(lat)
    U = metaplectic.metaplectic_matrix(sp)
    h = rng.real_dft_window(8)
    gt = gabor.tighten(U @ h, lat)
    rep = wilson.equivalence_report(gt, lat)
    checks["four_way_equivalence"] = all(rep.verdicts())

    # Zak criteria agree with tightness
    g = gabor.tighten(rng.real_dft_window(16), ring.CanonicalFinite(16, 2, 0))
    qh, _ = zak.cond_quadrature(g, 2, tol)
    ch, _ = zak.cond_correlation(g, 2, tol)
    checks["zak_criteria"] = qh and ch

    passed = all(v for v in checks.values() if isinstance(v, bool))
    emit({"command": "selftest", "seed": args.seed, "checks": checks,
          "passed": passed}, t0)
    return EXIT_OK if passed else EXIT_FALSE


def _random_lattice(rng: SplitMix64, L: int) -> ring.CanonicalFinite:
    divisors = [d for d in range(1, L // 2 + 1) if (L // 2) % d == 0]
    p = divisors[rng.integer(0, len(divisors) - 1)]
    b = rng.integer(0, L // (2 * p) - 1)
    return ring.CanonicalFinite(L, p, b)


def _scramble(rng: SplitMix64, lat: ring.CanonicalFinite, steps: int = 6) -> ring.GeneratorMatrix:
    a, b = lat.time_step, lat.b
    c, d = 0, lat.p
    for _ in range(steps):
        k = rng.integer(-3, 3)
        if rng.integer(0, 1):
            # column op: second += k * first
            b, d = b + k * a, d + k * c
        else:
            a, c = a + k * b, c + k * d
    return ring.GeneratorMatrix(a, b, c, d, domain="finite", L=lat.L)


def build_parser() -> argparse.ArgumentParser:
    tol = default_tol()
    ap = argparse.ArgumentParser(prog="wilsonlat",
                                 description="Wilson bases and tight Gabor frames "
                                             "on general time-frequency lattices")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("canonicalize", help="canonical lattice generator")
    c.add_argument("--domain", choices=("real", "discrete", "finite"), required=True)
    c.add_argument("--L", type=int, default=None)
    c.add_argument("--matrix", required=True, help="a,b,c,d (rationals allowed: 3/2)")
    c.set_defaults(func=cmd_canonicalize)

    g = sub.add_parser("gabor", help="Gabor frame operations")
    gsub = g.add_subparsers(dest="subcommand", required=True)
    gt = gsub.add_parser("tighten", help="canonical tight window")
    gt.add_argument("--lattice", required=True, help="L,p,b")
    gt.add_argument("--window", required=True)
    gt.add_argument("--out", required=True)
    gt.add_argument("--fourier-twist", action="store_true")
    gt.set_defaults(func=cmd_gabor)

    z = sub.add_parser("zak", help="Zak-domain tightness criteria")
    zsub = z.add_subparsers(dest="subcommand", required=True)
    zc = zsub.add_parser("check")
    zc.add_argument("--lattice", required=True, help="L,p,0")
    zc.add_argument("--window", required=True)
    zc.add_argument("--tol", type=float, default=tol)
    zc.set_defaults(func=cmd_zak)

    s = sub.add_parser("sigma", help="symplectic reindexing parameters")
    s.add_argument("--lattice", required=True, help="L,p,b")
    s.set_defaults(func=cmd_sigma)

    w = sub.add_parser("wilson", help="Wilson basis operations")
    wsub = w.add_subparsers(dest="subcommand", required=True)
    wb = wsub.add_parser("build")
    wb.add_argument("--setting", default="finite")
    wb.add_argument("--lattice", required=True)
    wb.add_argument("--window", required=True)
    wb.add_argument("--out", required=True)
    wb.set_defaults(func=cmd_wilson_build)
    wv = wsub.add_parser("verify")
    wv.add_argument("--lattice", required=True)
    wv.add_argument("--window", required=True)
    wv.add_argument("--gram", action="store_true", help="report the Gram deviation")
    wv.add_argument("--tol", type=float, default=tol)
    wv.set_defaults(func=cmd_wilson_verify)
    wd = wsub.add_parser("demo-hex")
    wd.add_argument("--nu", type=float, default=1.0)
    wd.add_argument("--L", type=int, default=256)
    wd.add_argument("--out", default=None)
    wd.set_defaults(func=cmd_demo_hex)

    dh = sub.add_parser("demo-hex", help="hexagonal-lattice demonstration")
    dh.add_argument("--nu", type=float, default=1.0)
    dh.add_argument("--L", type=int, default=256)
    dh.add_argument("--out", default=None)
    dh.set_defaults(func=cmd_demo_hex)

    st = sub.add_parser("selftest", help="deterministic invariant sweep")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--tol", type=float, default=tol)
    st.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    t0 = time.perf_counter()
    try:
        return args.func(args, t0)
    except SystemExit as exc:
        if isinstance(exc.code, str) or exc.code not in (0, None):
            if isinstance(exc.code, str):
                print(exc.code, file=sys.stderr)
            return EXIT_USAGE
        return EXIT_OK
    except (ring.LatticeError, gabor.FrameError, metaplectic.ParameterSearchError,
            ValueError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
