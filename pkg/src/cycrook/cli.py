"""Command line entry point: ``cycrook {compute,verify,circulant,bench}``.

Exit codes: 0 success, 1 verification failure or method disagreement,
2 usage or input error, 3 contract or resource refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .algebra import Poly, StructuralError, evaluate, render, xz_to_json, z_to_json
from .identities import Bounds, find_arbitrary_k_counterexample, verify_theorem
from .injections import ContractViolation
from .matrix import CirculantSpec, circulant_matrix, load_matrix, load_spec
from .rook import (
    classic_specialize,
    expand_last_k,
    expand_per_rows,
    expand_row,
    per_z_oracle,
    rook_coefficient,
    rook_poly_oracle,
)
from .structured import banded_per_z, structured_rook_z, theorem7_value

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("CYCROOK_THREADS", "1")))
    except ValueError:
        return 1


def _machine(value):
    if isinstance(value, Poly) and value.var == "x":
        return xz_to_json(value)
    if isinstance(value, Poly):
        return z_to_json(value)
    return str(value)


def _emit(args, payload: dict, value):
    if args.format == "json":
        payload = dict(payload, result=_machine(value))
        print(json.dumps(payload, sort_keys=True))
    else:
        print(render(value))


# ---------------------------------------------------------------------------
# compute


def _rook_by(method: str, A, args):
    if method == "oracle":
        return rook_poly_oracle(A, force=args.force).poly
    if method == "expand-last-k":
        return expand_last_k(A, args.k).poly
    if method == "expand-row":
        return expand_row(A, args.row).poly
    raise UsageError(f"method {method} does not produce R(x;z;A)")


def _per_by(method: str, A, args):
    if method == "oracle":
        return per_z_oracle(A, force=args.force)
    if method == "expand-per-rows":
        return expand_per_rows(A, args.rows or (1,))
    return rook_coefficient(_rook_by(method, A, args), A.rows)


def _compute_value(method: str, A, args):
    what = args.what
    if what in ("per-z", "classic-per"):
        value = _per_by(method, A, args)
        if what == "classic-per":
            value = classic_specialize(value)
    else:
        if method == "expand-per-rows":
            raise UsageError("expand-per-rows only computes per(z;A)")
        value = _rook_by(method, A, args)
        if what == "r-l":
            if args.l is None or not 0 <= args.l <= A.rows:
                raise UsageError(f"--l must be in 0..{A.rows}")
            value = rook_coefficient(value, args.l)
        elif what == "classic-rook":
            value = classic_specialize(value)
    if args.z is not None:
        value = evaluate(value, {"z": args.z})
    return value


def cmd_compute(args) -> int:
    A = load_matrix(args.input)
    value = _compute_value(args.method, A, args)
    if args.check and A.rows:
        other = "oracle" if args.method != "oracle" else "expand-row"
        second = _compute_value(other, A, args)
        if second != value:
            print(
                f"methods disagree: {args.method} -> {render(value)}; {other} -> {render(second)}",
                file=sys.stderr,
            )
            return EXIT_FAIL
    _emit(args, {"what": args.what, "method": args.method}, value)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    bounds = Bounds(max_m=args.max_m, max_n=args.max_n, max_nk=args.max_nk, entry=args.entry)
    if args.counterexample:
        start = time.perf_counter()
        w = find_arbitrary_k_counterexample(
            args.k, max_m=args.max_m, max_n=args.max_n, symbolic=True, trials=args.trials, seed=args.seed
        )
        doc = {
            "theorem": "counterexample",
            "k": args.k,
            "seed": args.seed,
            "bounds": {"max_m": args.max_m, "max_n": args.max_n},
            "found": w is not None,
            "witness": w.to_json() if w else None,
            "verified": bool(w and w.verified()),
        }
        if args.timing:
            doc["elapsed_ms"] = round((time.perf_counter() - start) * 1000.0, 3)
        text = json.dumps(doc, indent=2, sort_keys=True)
        _write_report(args, text)
        if args.format != "json":
            if w:
                print(f"witness found for rows {list(w.rows)} of:")
                for row in w.matrix.entries:
                    print("  [" + ", ".join(render(v) for v in row) + "]")
                print(f"  R(x;z;A)      = {render(w.expected)}")
                print(f"  naive formula = {render(w.naive)}")
            else:
                print("no witness within bounds")
        return EXIT_OK if (w and w.verified()) else EXIT_FAIL

    if args.theorem is None:
        raise UsageError("give --theorem N or --counterexample")
    report = verify_theorem(
        args.theorem, trials=args.trials, seed=args.seed, bounds=bounds, symbolic=args.symbolic, workers=_workers()
    )
    text = report.to_json(timing=args.timing)
    _write_report(args, text)
    if args.format != "json":
        status = "PASS" if report.passed else "FAIL"
        print(f"theorem {report.theorem}: {status} ({report.trials} cases, {report.checks} checks, "
              f"{len(report.failures)} failures)")
        for f in report.failures[:5]:
            print("  " + json.dumps(f, sort_keys=True))
    return EXIT_OK if report.passed else EXIT_FAIL


def _write_report(args, text: str):
    if args.output:
        with open(args.output, "w") as f:
            f.write(text + "\n")
    if args.format == "json":
        print(text)


# ---------------------------------------------------------------------------
# circulant


def _spec_from_args(args) -> CirculantSpec:
    if args.spec:
        return load_spec(args.spec)
    if args.n is None or args.coeffs is None:
        raise UsageError("give --spec FILE or --n/--k/--coeffs")
    return CirculantSpec(args.n, args.k, args.r, tuple(args.coeffs))


def _circulant_value(method: str, spec: CirculantSpec, args):
    z = args.z
    if args.what == "rook-z":
        if method == "closed-form":
            raise ContractViolation("no closed form for the full rook polynomial")
        if method == "dp":
            value = structured_rook_z(spec, force=args.force)
        else:
            value = rook_poly_oracle(circulant_matrix(spec), force=args.force).poly
        return value if z is None else evaluate(value, {"z": z})
    if method == "closed-form":
        if spec.r != 0 or len(spec.coeffs) != 2:
            raise ContractViolation("the closed form covers coeffs a0,a1 with r = 0 only")
        return theorem7_value(spec.n, spec.k, spec.coeffs[0], spec.coeffs[1], z=z)
    if method == "dp":
        return banded_per_z(spec, z=z)
    value = per_z_oracle(circulant_matrix(spec), force=args.force)
    return value if z is None else evaluate(value, {"z": z})


def cmd_circulant(args) -> int:
    spec = _spec_from_args(args)
    value = _circulant_value(args.method, spec, args)
    if args.cross_check:
        other = _circulant_value(args.cross_check, spec, args)
        if other != value:
            print(
                f"methods disagree: {args.method} -> {render(value)}; {args.cross_check} -> {render(other)}",
                file=sys.stderr,
            )
            return EXIT_FAIL
    _emit(args, {"spec": spec.to_json(), "method": args.method, "what": args.what}, value)
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench


def _timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def cmd_bench(args) -> int:
    rows = []
    for size in args.sizes:
        k = args.k if size % args.k == 0 else 1
        spec = CirculantSpec(size // k, k, 0, (1, 1))
        A = circulant_matrix(spec)
        for trial in range(args.trials):
            row = {"nk": size, "n": spec.n, "k": k, "trial": trial}
            ref = None
            if A.rows <= 9 or args.force:
                ref, row["oracle_s"] = _timed(lambda: per_z_oracle(A, force=True))
            if A.rows >= 2:
                v, row["expand_s"] = _timed(lambda: expand_per_rows(A, (1,)))
                row["expand_agrees"] = ref is None or v == ref
            v, row["closed_form_s"] = _timed(lambda: theorem7_value(spec.n, k, 1, 1))
            row["closed_form_agrees"] = ref is None or v == ref
            if spec.n >= 2:
                v, row["dp_s"] = _timed(lambda: banded_per_z(spec))
                row["dp_agrees"] = ref is None or v == ref
            rows.append(row)
    if args.format == "json":
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        cols = ["nk", "trial", "oracle_s", "expand_s", "closed_form_s", "dp_s"]
        print("  ".join(f"{c:>13}" for c in cols))
        for row in rows:
            cells = []
            for c in cols:
                v = row.get(c)
                cells.append(f"{v:>13.6f}" if isinstance(v, float) else f"{'-' if v is None else v:>13}")
            print("  ".join(cells))
    ok = all(v for r in rows for key, v in r.items() if key.endswith("agrees"))
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cycrook", description="Cyclic rook polynomials and z-permanents")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="R(x;z;A), per(z;A) or classical values for a matrix file")
    p.add_argument("--input", required=True, help="matrix JSON {rows, cols, entries}")
    p.add_argument("--what", default="rook-z", choices=["rook-z", "per-z", "r-l", "classic-rook", "classic-per"])
    p.add_argument("--l", type=int, help="coefficient index for --what r-l")
    p.add_argument("--method", default="oracle", choices=["oracle", "expand-last-k", "expand-row", "expand-per-rows"])
    p.add_argument("--k", type=int, default=1, help="rows for expand-last-k")
    p.add_argument("--row", type=int, default=1, help="row for expand-row")
    p.add_argument("--rows", type=_int_list, help="row set for expand-per-rows, e.g. 1,3")
    p.add_argument("--check", action="store_true", help="recompute by a second method and compare")
    p.add_argument("--z", type=int, help="bind z to an integer")
    p.add_argument("--force", action="store_true", help="lift the oracle size guard")
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="check an identity against the oracle")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--theorem", choices=["2", "3", "4", "5", "6", "7"])
    g.add_argument("--counterexample", action="store_true", help="search for an arbitrary-rows expansion failure")
    p.add_argument("--k", type=int, default=2, help="row-set size for --counterexample")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-m", type=int, default=None)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--max-nk", type=int, default=8)
    p.add_argument("--entry", type=int, default=3, help="random entries lie in [-entry, entry]")
    p.add_argument("--symbolic", action="store_true", help="generic symbolic entries over all shapes")
    p.add_argument("--timing", action="store_true", help="include elapsed_ms in the JSON report")
    p.add_argument("--output", help="also write the JSON report here")
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("circulant", help="per(z;.) or R(x;z;.) of (sum a_i P_n^(i-r)) (x) J_k")
    p.add_argument("--spec", help="spec JSON {n, k, r, coeffs}")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--coeffs", type=_int_list)
    p.add_argument("--what", default="per-z", choices=["per-z", "rook-z"])
    p.add_argument("--method", default="dp", choices=["closed-form", "dp", "oracle"])
    p.add_argument("--cross-check", choices=["closed-form", "dp", "oracle"])
    p.add_argument("--z", type=int, help="bind z to an integer")
    p.add_argument("--force", action="store_true")
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(func=cmd_circulant)

    p = sub.add_parser("bench", help="time oracle vs expansion vs closed form vs DP")
    p.add_argument("--sizes", type=_int_list, default=[4, 6, 8], help="matrix sizes nk")
    p.add_argument("--k", type=int, default=2, help="block size")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--force", action="store_true", help="run the oracle beyond 9x9")
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(func=cmd_bench)
    return parser


_DEFAULT_BOUNDS = {"2": (4, 5), "3": (4, 5), "4": (4, 5), "5": (3, 4), "6": (3, 4), "7": (4, 5)}


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        dm, dn = _DEFAULT_BOUNDS.get(args.theorem or "", (3, 4))
        args.max_m = dm if args.max_m is None else args.max_m
        args.max_n = dn if args.max_n is None else args.max_n
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StructuralError, json.JSONDecodeError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractViolation as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
