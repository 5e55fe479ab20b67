"""Command-line front end.

Exit status: 0 when every verdict is true, 1 when some verdict is false,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Callable

from . import lattice, verify
from .arith import format_rational
from .eisenstein import eis_k, pair_basis, tilde_s
from .manin import build_space, hecke_tn, symmetrize
from .qseries import format_series

MAX_ORDER = 2000
MAX_LEVEL = 50
MAX_WEIGHT = 12


class UsageError(Exception):
    pass


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n**0.5) + 1))


def _check_range(name: str, value: int, lo: int, hi: int | None = None) -> None:
    if value < lo or (hi is not None and value > hi):
        bound = f">= {lo}" if hi is None else f"in [{lo}, {hi}]"
        raise UsageError(f"--{name} must be {bound}, got {value}")


# -- checks -------------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    params: dict
    run: Callable[[], bool]


def _newform(l: int, k: int, order: int) -> bool:
    factors = {(7, 3): [(1, 3), (7, 3)], (5, 4): [(1, 4), (5, 4)]}[(l, k)]
    f = verify.eta_product(factors, order)
    return verify.check_newform_membership(l, k, f, order).member


def _hecke(l: int, k: int, p: int, count: int, order: int | None) -> bool:
    n = order or p * (verify.sturm_bound(l, k) + 10)
    return all(verify.check_hecke_equivariance(l, k, p, w, n) for w in verify.random_symbols(l, k, count, seed=p))


def _inside(primes, d_max: int) -> bool:
    _, failures = verify.inside_sweep(primes, d_max, 5, 3)
    return not failures


def _oracle() -> bool:
    ok = verify.dims(5, 3) == (4, 0) and verify.dims(7, 3)[1] == 1 and verify.dims(5, 4)[1] == 1
    for l, k, n in [(5, 3, 20), (7, 3, 30), (5, 4, 30)]:
        ok = ok and verify.pair_span_report(l, k, n).verdict
    return ok


def acceptance_checks(fast: bool = False, order_override: int | None = None) -> list[Check]:
    """One entry per acceptance criterion; ``fast`` trims the sweep ranges."""
    d_max = 8 if fast else 12
    n_vec = 5 if fast else 10
    primes = [2, 3, 5, 7] if fast else [2, 3, 5, 7, 11, 13]
    inside_d = 8 if fast else 10
    ov = order_override
    return [
        Check("newforms", {"cases": ["7,3", "5,4"], "order": ov or 40}, lambda: _newform(7, 3, ov or 40) and _newform(5, 4, ov or 40)),
        Check("segments", {"primes": primes}, lambda: verify.check_segments_match_H(primes)),
        Check(
            "r_plus_identity",
            {"cases": ["5,3", "5,4", "7,3"], "dmax": d_max},
            lambda: all(verify.check_r_plus_identity(l, k, d_max) for l, k in [(5, 3), (5, 4), (7, 3)]),
        ),
        Check(
            "relation_images",
            {"cases": ["5,3", "5,4", "7,3"]},
            lambda: all(verify.check_relation_images_stable(l, k, ov or n) for l, k, n in [(5, 3, 30), (5, 4, 30), (7, 3, 40)]),
        ),
        Check(
            "hecke_equivariance",
            {"cases": ["5,3,2", "5,3,3", "7,3,2", "7,3,3"], "vectors": n_vec},
            lambda: all(_hecke(l, k, p, n_vec, ov) for l, k, p in [(5, 3, 2), (5, 3, 3), (7, 3, 2), (7, 3, 3)]),
        ),
        Check("derivatives", {"cases": ["5,3", "5,4"], "order": ov or 30}, lambda: all(verify.check_derivs_in_pairs(l, k, ov or 30) for l, k in [(5, 3), (5, 4)])),
        Check("cone_sums", {"samples": 20 if fast else 100}, lambda: verify.check_cone_sums_random(20 if fast else 100)),
        Check("divisor_sum_roundtrip", {"samples": 10 if fast else 50}, lambda: verify.check_divisor_sum_roundtrip(10 if fast else 50)),
        Check(
            "hecke_symbols",
            {"cases": ["5,3", "7,3"], "vectors": n_vec if fast else 20},
            lambda: all(
                verify.check_hecke_symmetrization(l, k, n_vec if fast else 20)
                and verify.check_hecke_multiplicativity(l, k, n_vec if fast else 20)
                for l, k in [(5, 3), (7, 3)]
            ),
        ),
        Check("sigma_cancellation", {"primes": [2, 3], "dmax": inside_d, "level": 5, "weight": 3}, lambda: _inside([2, 3], inside_d)),
        Check("threads", {"dmax": 30}, lambda: verify.check_threads(30)),
        Check("dimension_oracle", {"cases": ["5,3", "7,3", "5,4"]}, _oracle),
    ]


def _run_checks(checks: list[Check], as_json: bool, out) -> int:
    reports = []
    for c in checks:
        t0 = time.perf_counter()
        verdict = bool(c.run())
        reports.append({"check": c.name, "params": c.params, "verdict": verdict, "elapsed": round(time.perf_counter() - t0, 3)})
    reports.sort(key=lambda r: r["check"])
    for r in reports:
        if as_json:
            print(json.dumps(r, sort_keys=True), file=out)
        else:
            print(f"{r['check']}: {'PASS' if r['verdict'] else 'FAIL'} {json.dumps(r['params'], sort_keys=True)}", file=out)
    return 0 if all(r["verdict"] for r in reports) else 1


# -- commands -----------------------------------------------------------------------------

def cmd_series(args, out) -> int:
    _check_range("level", args.level, 1, MAX_LEVEL)
    order = args.order_override or args.order
    _check_range("order", order, 0, MAX_ORDER)
    if args.ek:
        if args.weight < 2 or args.weight % 2:
            raise UsageError("--ek needs an even weight >= 2")
        f = eis_k(args.weight, order)
    else:
        _check_range("weight", args.weight, 1, MAX_WEIGHT)
        f = tilde_s(args.level, args.a, args.weight, order)
    print(f.to_json() if args.json else format_series(f), file=out)
    return 0


def cmd_pairs(args, out) -> int:
    _check_range("level", args.level, 1, MAX_LEVEL)
    _check_range("weight", args.weight, 2, MAX_WEIGHT)
    order = args.order_override or args.order
    _check_range("order", order, 0, MAX_ORDER)
    for lab, f in pair_basis(args.level, args.weight, order, include_quasimodular=args.quasi):
        rec = {"label": str(lab), "quasimodular": lab.quasimodular, "series": json.loads(f.to_json())}
        print(json.dumps(rec), file=out)
    return 0


def cmd_symbols_dims(args, out) -> int:
    _check_range("level", args.level, 1, MAX_LEVEL)
    _check_range("weight", args.weight, 2, MAX_WEIGHT)
    sp = build_space(args.level, args.weight)
    gens = [sp.symbol(*sp.generator(j)) for j in range(sp.ngens)]
    plus = sp.rank_of(symmetrize(g, 1, reduce=False) for g in gens)
    minus = sp.rank_of(symmetrize(g, -1, reduce=False) for g in gens)
    rec = {
        "level": sp.level,
        "weight": sp.weight,
        "generators": sp.ngens,
        "relation_rank": sp.relation_rank,
        "quotient_dim": sp.quotient_dim,
        "plus_dim": plus,
        "minus_dim": minus,
    }
    if args.json:
        print(json.dumps(rec), file=out)
    else:
        for key, val in rec.items():
            print(f"{key}: {val}", file=out)
    return 0


def cmd_symbols_hecke(args, out) -> int:
    _check_range("level", args.level, 1, MAX_LEVEL)
    _check_range("weight", args.weight, 2, MAX_WEIGHT)
    _check_range("n", args.n, 1)
    _check_range("r", args.r, 0, args.weight - 2)
    sp = build_space(args.level, args.weight)
    img = hecke_tn(sp, sp.symbol(args.r, args.u, args.v), args.n)
    if args.json:
        terms = [{"r": r, "u": u, "v": v, "coeff": format_rational(c)} for r, u, v, c in img.terms()]
        print(json.dumps({"level": sp.level, "weight": sp.weight, "n": args.n, "image": terms}), file=out)
    else:
        print(repr(img), file=out)
    return 0


def cmd_lattice_hp(args, out) -> int:
    if not _is_prime(args.p):
        raise UsageError(f"--p must be prime, got {args.p}")
    rows = []
    quads = []
    for S in lattice.sublattices_index_p(args.p):
        segs = lattice.boundary_segments(S)
        quads += [lattice.segment_quad(s) for s in segs]
        rows.append({"basis": [list(v) for v in S.basis], "segments": [[list(a), list(b)] for a, b in segs]})
    ok = verify.check_segments_match_H([args.p])
    if args.json:
        print(json.dumps({"p": args.p, "sublattices": rows, "segment_count": len(quads), "bijection": ok}), file=out)
    else:
        for r in rows:
            print(f"S basis {r['basis']}: segments {r['segments']}", file=out)
        print(f"{len(rows)} sublattices, {len(quads)} segments, |H({args.p})| = {len(lattice.enumerate_H(args.p))}", file=out)
        print(f"bijection with H({args.p}): {'yes' if ok else 'no'}", file=out)
    return 0 if ok else 1


def cmd_lattice_threads(args, out) -> int:
    _check_range("d", args.d, 1, 500)
    ths = lattice.threads(args.d)
    if args.json:
        print(json.dumps({"D": args.d, "threads": [[list(q) for q in t] for t in ths]}), file=out)
    else:
        for t in ths:
            print(" -> ".join(f"({q.m1},{q.k1},{q.m2},{q.k2})" for q in t), file=out)
        print(f"{len(ths)} threads covering {len(lattice.enumerate_I(args.d))} elements of I({args.d})", file=out)
    return 0


def cmd_verify(args, out) -> int:
    which = args.which
    ov = args.order_override
    if which == "all":
        return _run_checks(acceptance_checks(args.fast, ov), args.json, out)
    if which in ("main", "mumap", "hecke", "firstapprox"):
        if args.level is None or args.weight is None:
            raise UsageError(f"verify {which} needs --level and --weight")
        _check_range("level", args.level, 5, MAX_LEVEL)
        _check_range("weight", args.weight, 3, MAX_WEIGHT)
    l, k = args.level, args.weight
    if which == "main":
        # the explicit newforms known to the oracle
        if (l, k) not in ((7, 3), (5, 4)):
            raise UsageError("verify main knows the newforms at (7,3) and (5,4)")
        order = ov or 40
        check = Check("main", {"level": l, "weight": k, "order": order}, lambda: _newform(l, k, order))
    elif which == "mumap":
        order = ov or (40 if l >= 7 else 30)
        check = Check("mumap", {"level": l, "weight": k, "order": order}, lambda: verify.check_relation_images_stable(l, k, order))
    elif which == "hecke":
        if args.p is None or not _is_prime(args.p) or l % args.p == 0:
            raise UsageError("verify hecke needs --p, a prime not dividing the level")
        count = 5 if args.fast else 10
        check = Check("hecke", {"level": l, "weight": k, "p": args.p, "vectors": count}, lambda: _hecke(l, k, args.p, count, ov))
    elif which == "firstapprox":
        check = Check("firstapprox", {"level": l, "weight": k, "dmax": args.dmax}, lambda: verify.check_r_plus_identity(l, k, args.dmax))
    else:
        primes = [q for q in range(2, args.pmax + 1) if _is_prime(q)]
        check = Check("abcd", {"primes": primes}, lambda: verify.check_segments_match_H(primes))
    return _run_checks([check], args.json, out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--fast", action="store_true", help="trimmed sweep ranges")
    common.add_argument("--order-override", type=int, metavar="N", help="override the truncation order")

    parser = argparse.ArgumentParser(prog="toricforms", description="Toric modular forms of higher weight.", parents=[common])
    parser.set_defaults(json=False, fast=False, order_override=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", parents=[common], help="print one Eisenstein generator")
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--ek", action="store_true", help="level-one E_k instead")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("pairs", parents=[common], help="catalog of pairs as JSON lines")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--quasi", action="store_true", help="include quasimodular pairs")
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("symbols", help="Manin symbol spaces")
    ssub = p.add_subparsers(dest="action", required=True)
    q = ssub.add_parser("dims", parents=[common])
    q.add_argument("--level", type=int, required=True)
    q.add_argument("--weight", type=int, required=True)
    q.set_defaults(func=cmd_symbols_dims)
    q = ssub.add_parser("hecke", parents=[common])
    q.add_argument("--level", type=int, required=True)
    q.add_argument("--weight", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--u", type=int, required=True)
    q.add_argument("--v", type=int, required=True)
    q.set_defaults(func=cmd_symbols_hecke)

    p = sub.add_parser("lattice", help="lattice geometry")
    lsub = p.add_subparsers(dest="action", required=True)
    q = lsub.add_parser("hp", parents=[common])
    q.add_argument("--p", type=int, required=True)
    q.set_defaults(func=cmd_lattice_hp)
    q = lsub.add_parser("threads", parents=[common])
    q.add_argument("--d", type=int, required=True)
    q.set_defaults(func=cmd_lattice_threads)

    p = sub.add_parser("verify", parents=[common], help="verification checks")
    p.add_argument("which", choices=["main", "mumap", "hecke", "firstapprox", "abcd", "all"])
    p.add_argument("--level", type=int)
    p.add_argument("--weight", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--dmax", type=int, default=12)
    p.add_argument("--pmax", type=int, default=13)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        return args.func(args, out)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
