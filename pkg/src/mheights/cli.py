"""Command-line surface: compute profiles, cross-check methods, verify
the worked tables, and emit reproducible JSON/CSV reports.

Exit codes: 0 success, 1 verification/cross-check failure, 2 bad
arguments, 3 invariant violation in a loaded code.  Reports are
byte-identical across identical invocations apart from the wall-time
field.  The environment variable HEIGHTS_THREADS (integer >= 1) caps
the candidate-enumeration parallelism.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

from . import analysis, codes, heights

_METHOD_CHOICES = ("lp", "lp-dual", "comb", "comb-pc", "comb-dual", "auto")
_CROSSCHECK_METHODS = ("lp", "lp-dual", "comb", "comb-pc", "comb-dual")

SQRT5 = math.sqrt(5.0)
PHI = (1.0 + SQRT5) / 2.0

# analytic table cells: family name -> {m: exact value}
TABLE_CELLS = {
    "ico": {1: SQRT5, 2: SQRT5, 3: 2.0 + SQRT5},
    "dod": {1: 2.0 + SQRT5, 2: 4.0 + SQRT5, 3: 9.0 + 4.0 * SQRT5},
    "dod-dual": {
        1: 3.0 / SQRT5,
        2: PHI,
        3: 4.0 - SQRT5,
        4: 3.0,
        5: 2.0 + SQRT5,
        6: 2.0 + SQRT5,
        7: 5.0 + 2.0 * SQRT5,
    },
}


class CliArgumentError(ValueError):
    """Bad command arguments outside argparse's own validation."""


def build_code(selector: str, seed: int = 0) -> codes.RealCode:
    """Resolve a code selector: a family string (ico, dod, ico-dual,
    dod-dual, neg:N, neg-dual:N, axis:N, random:N,K) or a JSON file path."""
    fixed = {
        "ico": codes.make_icosahedral,
        "dod": codes.make_dodecahedral,
    }
    if selector in fixed:
        return fixed[selector]()
    if selector in ("ico-dual", "dod-dual"):
        return codes.dual(fixed[selector[:3]]())
    if ":" in selector:
        family, _, params = selector.partition(":")
        try:
            if family == "neg":
                return codes.make_negacyclic(int(params))
            if family == "neg-dual":
                return codes.dual(codes.make_negacyclic(int(params)))
            if family == "axis":
                return codes.make_axis_replicated(int(params))
            if family == "random":
                n_str, _, k_str = params.partition(",")
                return codes.make_random(int(n_str), int(k_str), seed)
        except (codes.BadLengthError,) as exc:
            raise CliArgumentError(str(exc)) from None
        except ValueError as exc:
            raise CliArgumentError(f"bad parameters in {selector!r}: {exc}") from None
        raise CliArgumentError(f"unknown code family {family!r}")
    if os.path.exists(selector):
        return codes.load_code(selector)
    raise CliArgumentError(f"no such code selector or file: {selector!r}")


def _height_json(value):
    if value is None:
        return None
    if math.isinf(value):
        return "inf"
    return float(value)


def _certificate_json(cert: heights.ExtremalCertificate | None):
    if cert is None:
        return None
    return {
        "codeword": [float(v) for v in cert.codeword],
        "coefficients": [float(v) for v in cert.coefficients],
        "subset": list(cert.subset),
        "index": cert.index,
        "m": cert.m,
        "height": _height_json(cert.height),
    }


def _emit(report: dict, out: str) -> None:
    if out == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("m,height,method")
        for m, h in enumerate(report["heights"]):
            if h is None:
                continue
            print(f"{m},{h},{report['method']}")


def _workers() -> int:
    raw = os.environ.get("HEIGHTS_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise CliArgumentError(f"HEIGHTS_THREADS must be an integer >= 1, got {raw!r}")
    if value < 1:
        raise CliArgumentError(f"HEIGHTS_THREADS must be an integer >= 1, got {raw!r}")
    return value


def cmd_profile(args) -> int:
    code = build_code(args.code, args.seed)
    workers = _workers()
    requested = args.m if args.m == "all" else int(args.m)
    start = time.perf_counter()
    heights_out: list = [None] * code.n
    certs_out: list = [None] * code.n
    min_distance = None
    if args.m == "all":
        profile = heights.full_profile(code, method=args.method, tol=args.tol, workers=workers)
        heights_out = [_height_json(h) for h in profile.heights]
        certs_out = [_certificate_json(c) for c in profile.certificates]
        min_distance = profile.min_distance
    else:
        m = requested
        if not 0 <= m < code.n:
            raise CliArgumentError(f"m must be in [0, {code.n}), got {m}")
        if m == 0:
            value, cert = 1.0, None
        else:
            value, cert = heights.height_once(code, m, args.method, args.tol, workers)
        heights_out[m] = _height_json(value)
        certs_out[m] = _certificate_json(cert)
    elapsed = time.perf_counter() - start
    report = {
        "code": code.name,
        "n": code.n,
        "k": code.k,
        "method": args.method,
        "requested_m": requested,
        "tolerance": args.tol,
        "heights": heights_out,
        "certificates": certs_out if args.certificates else None,
        "min_distance": min_distance,
        "wall_time_s": elapsed,
    }
    _emit(report, args.out)
    return 0


def cmd_crosscheck(args) -> int:
    code = build_code(args.code, args.seed)
    workers = _workers()
    start = time.perf_counter()
    profiles = {
        method: heights.full_profile(code, method=method, tol=1e-9, workers=workers)
        for method in _CROSSCHECK_METHODS
    }
    reference = profiles["lp"]
    worst = {"m": None, "method": None, "relative_error": 0.0}
    agree = True
    for method, profile in profiles.items():
        if profile.min_distance != reference.min_distance:
            agree = False
            worst = {"m": min(profile.min_distance, reference.min_distance),
                     "method": method, "relative_error": math.inf}
            continue
        for m in range(reference.min_distance):
            a, b = reference.heights[m], profile.heights[m]
            err = abs(a - b) / max(1.0, abs(a))
            if err > worst["relative_error"]:
                worst = {"m": m, "method": method, "relative_error": err}
            if err > args.tol:
                agree = False
    elapsed = time.perf_counter() - start
    report = {
        "code": code.name,
        "n": code.n,
        "k": code.k,
        "tolerance": args.tol,
        "heights_by_method": {
            method: [_height_json(h) for h in profile.heights]
            for method, profile in profiles.items()
        },
        "min_distance": reference.min_distance,
        "agree": agree,
        "max_discrepancy": worst,
        "wall_time_s": elapsed,
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    if not agree:
        print(
            f"disagreement: method {worst['method']} at m={worst['m']} "
            f"(relative error {worst['relative_error']:.3e})",
            file=sys.stderr,
        )
        return 1
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    try:
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise CliArgumentError(f"bad range {text!r}; expected LO:HI") from None
    if lo_i > hi_i:
        raise CliArgumentError(f"empty range {text!r}")
    return lo_i, hi_i


def _platonic_cells(workers: int):
    for name, expected_by_m in TABLE_CELLS.items():
        code = build_code(name)
        for m, expected in expected_by_m.items():
            got, _ = heights.height_once(code, m, "auto", 1e-9, workers)
            yield {"table": name, "m": m, "expected": expected, "computed": got}


def _negacyclic_cells(lo: int, hi: int, workers: int):
    for n in range(lo, hi + 1):
        code = codes.make_negacyclic(n)
        for m in (1, 2):
            got = heights.height_comb_dual(code, m)
            yield {
                "table": f"neg:{n}",
                "m": m,
                "expected": analysis.closed_form_negacyclic(n, m),
                "computed": got,
            }
        dual_code = codes.dual(code)
        for m in range(1, n - 1):
            got = heights.height_comb_dual(dual_code, m)
            yield {
                "table": f"neg-dual:{n}",
                "m": m,
                "expected": analysis.closed_form_negacyclic_dual(n, m),
                "computed": got,
            }


def _axis_cells(lo: int, hi: int, workers: int):
    for n in range(lo, hi + 1):
        code = codes.make_axis_replicated(n)
        got = heights.height_comb_dual(code, 1)
        yield {
            "table": f"axis:{n}",
            "m": 1,
            "expected": float(math.ceil(n / 2) - 1),
            "computed": got,
        }


def cmd_verify_tables(args) -> int:
    workers = _workers()
    start = time.perf_counter()
    lo, hi = _parse_range(args.n_range)
    if args.tables == "platonic":
        cells = list(_platonic_cells(workers))
    elif args.tables == "neg":
        cells = list(_negacyclic_cells(lo, hi, workers))
    else:
        cells = list(_axis_cells(lo, hi, workers))
    for cell in cells:
        err = abs(cell["computed"] - cell["expected"]) / max(1.0, abs(cell["expected"]))
        cell["relative_error"] = err
        cell["ok"] = err <= args.tol
    all_ok = all(cell["ok"] for cell in cells)
    elapsed = time.perf_counter() - start
    report = {
        "tables": args.tables,
        "tolerance": args.tol,
        "cells": cells,
        "all_ok": all_ok,
        "wall_time_s": elapsed,
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    if not all_ok:
        for cell in cells:
            if not cell["ok"]:
                print(
                    f"FAILED {cell['table']} m={cell['m']}: expected "
                    f"{cell['expected']!r}, computed {cell['computed']!r}",
                    file=sys.stderr,
                )
        return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mheights",
        description="Height profiles of linear codes over the reals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="compute a height profile")
    p.add_argument("--code", required=True, help="family selector or JSON file path")
    p.add_argument("--method", choices=_METHOD_CHOICES, default="auto")
    p.add_argument("--m", default="all", help="height index or 'all'")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", choices=("json", "csv"), default="json")
    p.add_argument("--certificates", action="store_true")
    p.add_argument("--seed", type=int, default=0, help="seed for random codes")
    p.set_defaults(func=cmd_profile)

    c = sub.add_parser("crosscheck", help="run every method and compare")
    c.add_argument("--code", required=True)
    c.add_argument("--tol", type=float, default=1e-6)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_crosscheck)

    v = sub.add_parser("verify-tables", help="recompute the worked tables")
    v.add_argument("--tables", choices=("platonic", "neg", "axis"), default="platonic")
    v.add_argument("--n-range", default="3:12", help="LO:HI inclusive length range")
    v.add_argument("--tol", type=float, default=1e-8)
    v.set_defaults(func=cmd_verify_tables)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except codes.InvalidCodeError as exc:
        print(f"invalid code: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
