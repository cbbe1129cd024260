"""Command line front end: gadget, reduce, symdet, bench.

Reports are one JSON object per line on stdout. Exit codes: 0 ok, 1 usage or
input error, 2 failed verification.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .field import NotPrime, check_prime
from .gadget import build_resistance
from .matrix import (FormatError, NotLaplacian, degrees, format_matrix, format_vector,
                     is_unit_weight, read_matrix, read_vector)
from .reduce import REDUCTIONS
from .solve import LinSystem, enumerate_solutions, solve_all, spaces_equal_under_map
from .symbolic import FieldTooSmall, TooLarge, ZeroRow, det_zero_exact, det_zero_randomized, reduce_to_mult3

VERIFY_LIMIT = 10**6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _rng():
    seed = os.environ.get("ZPLAP_SEED")
    return random.Random(int(seed) if seed is not None else None)


def _read_matrix(path):
    if not os.path.isfile(path):
        raise UsageError(f"no such file: {path}")
    return read_matrix(path)


def _read_vector(path):
    if not os.path.isfile(path):
        raise UsageError(f"no such file: {path}")
    return read_vector(path)


def _emit(report):
    print(json.dumps(report, sort_keys=True))


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# -- gadget -------------------------------------------------------------------------

def cmd_gadget(args):
    p = check_prime(args.p)
    if not 1 <= args.r < p:
        raise UsageError("need 1 <= r < p")
    t0 = time.perf_counter()
    C = build_resistance(args.r, p, method="naive" if args.naive else "auto")
    micros = int((time.perf_counter() - t0) * 1e6)
    verified = C.verify()
    if args.out:
        _write(args.out, format_matrix(C.matrix))
    _emit({"command": "gadget", "p": p, "r": args.r, "n": C.n, "nnz": C.nnz(),
           "max_deg": C.degrees()[0], "micros": micros, "verified": verified})
    return 0 if verified else 2


# -- reduce -------------------------------------------------------------------------

def _verify_reduction(A, b, p, red, force):
    """Compare input and back-mapped output solution sets; None when skipped."""
    n_in = len(A[0]) if isinstance(A, list) else A.n
    small = p ** n_in <= VERIFY_LIMIT
    if not small and not force:
        print(f"warning: p^n = {p}^{n_in} exceeds {VERIFY_LIMIT}; verification skipped",
              file=sys.stderr)
        return None
    src = LinSystem(A, b, p)
    S1 = solve_all(src)
    ok = True
    if small:
        ok = set(S1.members()) == enumerate_solutions(src)
    S2 = solve_all(red.output)
    return ok and spaces_equal_under_map(S1, S2, red.back_map)


def cmd_reduce(args):
    mf = _read_matrix(args.matrix)
    p = check_prime(mf.p)
    if args.rhs:
        pb, b = _read_vector(args.rhs)
        if pb != p:
            raise UsageError("matrix and rhs use different primes")
    else:
        b = [0] * mf.rows
    if len(b) != mf.rows:
        raise UsageError(f"rhs length {len(b)} does not match {mf.rows} rows")
    fn = REDUCTIONS[args.to]
    if args.to in ("laplacian", "walk"):
        A = mf.to_dense()
        red = fn(A, b, p)
    else:
        A = mf.to_sym()
        red = fn(A, b)
    report = {"command": "reduce", **red.certificate()}
    out = red.output
    if args.to in ("unit", "lowdeg"):
        report["unit_weight"] = is_unit_weight(out.A)
        report["maxdeg_weighted"] = degrees(out.A)[1]
        report["degree_bound"] = round(100 * math.log(p), 3)
    verified = None
    if not args.no_verify:
        verified = _verify_reduction(A, b, p, red, args.verify)
    report["verified"] = verified
    if args.out:
        _write(args.out, format_matrix(out.A))
        _write(args.out_rhs or args.out + ".rhs", format_vector(out.b, p))
    _emit(report)
    return 2 if verified is False else 0


# -- symdet -------------------------------------------------------------------------

def cmd_symdet(args):
    mf = _read_matrix(args.matrix)
    q = check_prime(mf.p, minimum=2)
    if mf.rows != mf.cols:
        raise UsageError("symdet needs a square matrix")
    B = reduce_to_mult3(mf.to_dense(), q)
    report = {"command": "symdet", "n_in": mf.rows, "size": B.n, "pdeg": B.pdeg(),
              "maxm": B.maxm(), "nnz": B.nnz()}
    try:
        report["det_zero_exact"] = det_zero_exact(B)
    except TooLarge:
        report["det_zero_exact"] = None
    try:
        report["det_zero_randomized"] = det_zero_randomized(B, args.trials, _rng())
    except FieldTooSmall as e:
        report["det_zero_randomized"] = None
        report["note"] = str(e)
    _emit(report)
    return 0


# -- bench --------------------------------------------------------------------------

def _bench_one(job):
    p, r = job
    t0 = time.perf_counter()
    C = build_resistance(r, p)
    micros = int((time.perf_counter() - t0) * 1e6)
    return p, r, C.nnz(), C.degrees()[0], micros, C.verify()


def cmd_bench(args):
    try:
        primes = [int(x) for x in args.p_list.split(",") if x.strip()]
    except ValueError:
        raise UsageError("--p-list must be comma separated integers") from None
    for p in primes:
        check_prime(p)
    rng = _rng()
    jobs = [(p, rng.randrange(1, p)) for p in primes for _ in range(args.samples)]
    workers = args.workers or os.cpu_count() or 1
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_bench_one, jobs, chunksize=8))
    else:
        rows = [_bench_one(j) for j in jobs]
    fh = open(args.csv, "w", newline="") if args.csv not in (None, "-") else sys.stdout
    try:
        w = csv.writer(fh)
        w.writerow(["p", "r", "nnz", "max_deg", "micros"])
        for row in rows:
            w.writerow(row[:5])
    finally:
        if fh is not sys.stdout:
            fh.close()
    failures = sum(1 for row in rows if not row[5])
    if args.csv not in (None, "-"):
        _emit({"command": "bench", "rows": len(rows), "failures": failures})
    return 2 if failures else 0


def build_parser():
    ap = _Parser(prog="zplap", description="Exact reductions between linear systems over Z_p.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gadget", help="build a unit-weight circuit of resistance r mod p")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--naive", action="store_true", help="use the path of length r")
    g.add_argument("--out", help="write the circuit matrix here")
    g.set_defaults(func=cmd_gadget)

    r = sub.add_parser("reduce", help="reduce a linear system")
    r.add_argument("--to", required=True, choices=sorted(REDUCTIONS))
    r.add_argument("--matrix", required=True)
    r.add_argument("--rhs")
    r.add_argument("--out", help="output matrix path (rhs goes to OUT.rhs)")
    r.add_argument("--out-rhs")
    r.add_argument("--verify", action="store_true",
                   help="verify even when p^n exceeds the enumeration limit")
    r.add_argument("--no-verify", action="store_true")
    r.set_defaults(func=cmd_reduce)

    s = sub.add_parser("symdet", help="multiplicity-3 symbolic determinant reduction")
    s.add_argument("--matrix", required=True)
    s.add_argument("--trials", type=int, default=20)
    s.set_defaults(func=cmd_symdet)

    b = sub.add_parser("bench", help="gadget size/time sweep as CSV")
    b.add_argument("--p-list", required=True)
    b.add_argument("--samples", type=int, default=50)
    b.add_argument("--csv")
    b.add_argument("--workers", type=int, default=0)
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, NotPrime, FormatError, NotLaplacian, ZeroRow, ValueError, OSError) as e:
        print(f"zplap {args.command}: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
