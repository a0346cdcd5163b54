"""Command-line surface.

One subcommand per module surface: gd, sd, cyclo, period, series, closed,
oracle, sweep, verify.  All structured output goes to stdout as JSON (or
CSV where a table is the natural shape); diagnostics go to stderr.

Exit codes: 0 success, 1 verification failure, 2 invalid input.
Configuration precedence: flags, then CYCLOMOD_* environment variables,
then defaults.  The environment controls only scale guards (CYCLOMOD_MAX_P)
and worker count (CYCLOMOD_JOBS).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import closedform, cyclotomy, oracle, periods, series, sweep, waring
from .ffield import make_context, primes_in_range
from .errors import (
    AllZeroToOrder,
    BoundExceeded,
    CyclomodError,
    DegenerateOrder,
    FormulaMismatch,
    InternalDisagreement,
    IntegralityFailure,
    NoRepresentation,
    NotPrime,
    SanityFailure,
    ScaleGuard,
    Unreachable,
    Unrepresentable,
    WrongResidueClass,
    ZeroArgument,
)

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INVALID = 2

_INPUT_ERRORS = (
    NotPrime,
    WrongResidueClass,
    ZeroArgument,
    ScaleGuard,
    ValueError,
    OSError,
)
_VERIFICATION_ERRORS = (
    InternalDisagreement,
    SanityFailure,
    FormulaMismatch,
    IntegralityFailure,
    BoundExceeded,
    Unreachable,
    AllZeroToOrder,
    NoRepresentation,
    Unrepresentable,
)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        print(f"warning: ignoring non-integer {name}={raw!r}", file=sys.stderr)
        return default


def _context(args):
    return make_context(args.prime, args.order, max_p=args.max_p)


def _print_json(payload) -> None:
    print(json.dumps(payload, separators=(",", ":")))


def _trivial_payload(exc: DegenerateOrder) -> dict:
    return {
        "p": str(exc.p),
        "d_requested": str(exc.d),
        "trivial": True,
        "g": str(exc.trivial_g),
        "note": "gcd(d, p-1) = 1: every unit is a d-th power",
    }


def cmd_gd(args) -> int:
    try:
        solution = waring.solve(_context(args))
    except DegenerateOrder as exc:
        print(exc.trivial_g)
        return EXIT_OK
    print(solution.g)
    return EXIT_OK


def cmd_sd(args) -> int:
    try:
        ctx = _context(args)
    except DegenerateOrder as exc:
        _print_json(_trivial_payload(exc))
        return EXIT_OK
    solution = waring.solve(ctx)
    payload = {
        "p": str(ctx.p),
        "d": str(ctx.d),
        "f": str(ctx.f),
        "theta": str(ctx.theta),
        "omega": str(ctx.omega),
        "per_class_s": [str(s) for s in solution.per_class_s],
        "g": str(solution.g),
    }
    if args.element is not None:
        alpha = ctx.class_of(args.element)
        payload["a"] = str(args.element % ctx.p)
        payload["class"] = str(alpha)
        payload["s"] = str(solution.per_class_s[alpha])
    _print_json(payload)
    return EXIT_OK


def cmd_cyclo(args) -> int:
    try:
        ctx = _context(args)
    except DegenerateOrder as exc:
        _print_json(_trivial_payload(exc))
        return EXIT_OK
    table = cyclotomy.compute_table(ctx)
    if args.format == "csv":
        for row in table.counts:
            print(",".join(str(c) for c in row))
    else:
        # entries are below p, so plain JSON integers stay exact
        _print_json(
            {
                "p": ctx.p,
                "d": ctx.d,
                "omega": ctx.omega,
                "counts": [list(row) for row in table.counts],
            }
        )
    return EXIT_OK


def cmd_period(args) -> int:
    try:
        ctx = _context(args)
    except DegenerateOrder as exc:
        _print_json(_trivial_payload(exc))
        return EXIT_OK
    table = cyclotomy.compute_table(ctx)
    seq = waring.n_sequence(table, max(ctx.d - 1, 1))
    poly = periods.period_polynomial(seq)
    _print_json(
        {
            "p": str(ctx.p),
            "d": str(ctx.d),
            "coefficients": [str(c) for c in poly.coeffs],
            "discriminant": str(poly.discriminant),
        }
    )
    return EXIT_OK


def cmd_series(args) -> int:
    try:
        ctx = _context(args)
    except DegenerateOrder as exc:
        _print_json(_trivial_payload(exc))
        return EXIT_OK
    order = args.series_order if args.series_order is not None else ctx.d + 2
    table = cyclotomy.compute_table(ctx)
    seq = waring.n_sequence(table, 1)
    result = series.i_series(seq, args.class_index, order)
    _print_json(
        {
            "p": str(ctx.p),
            "d": str(ctx.d),
            "j": str(args.class_index % ctx.d),
            "order": str(order),
            "coefficients": [str(c) for c in result.coeffs],
        }
    )
    return EXIT_OK


def cmd_closed(args) -> int:
    p, d = args.prime, args.order
    if d == 3:
        g = closedform.g3_closed(p)
        kind = closedform.KIND_D3
        names = ("L", "M")
    elif d == 4:
        g = closedform.g4_closed(p)
        kind = closedform.KIND_D4
        names = ("x", "y")
    else:
        raise ValueError(f"closed forms exist for d=3 and d=4 only, got {d}")
    rep = closedform.represent(p, kind)
    ctx = make_context(p, d, max_p=args.max_p)
    resolved = closedform.resolve_sign(rep, cyclotomy.compute_table(ctx))
    payload: dict[str, object] = {
        "p": str(p),
        "d": str(d),
        "g": str(g),
        "representation": {
            "kind": kind,
            names[0]: str(resolved.first),
            names[1]: str(resolved.second),
        },
    }
    if d == 4:
        witness = closedform.diophantine_witness(p)
        payload["witness"] = (
            None
            if witness is None
            else {
                "parity": witness.parity,
                "alphas": [str(a) for a in witness.alphas],
                "worst_case_4": witness.worst_case_4,
            }
        )
    _print_json(payload)
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        ctx = _context(args)
    except DegenerateOrder as exc:
        _print_json(_trivial_payload(exc))
        return EXIT_OK
    counts = oracle.dp_counts(ctx, args.k_max)
    print("k," + ",".join(str(a) for a in range(ctx.p)))
    for k in range(1, counts.k_max + 1):
        print(f"{k}," + ",".join(str(c) for c in counts.row(k)))
    return EXIT_OK


def cmd_sweep(args) -> int:
    pmin = args.pmin if args.pmin is not None else args.prime
    pmax = args.pmax if args.pmax is not None else args.prime
    if pmin is None or pmax is None:
        raise ValueError("sweep needs --pmin/--pmax (or -p for a single prime)")
    jobs = args.jobs if args.jobs is not None else _env_int("CYCLOMOD_JOBS", 1)
    skip: set[tuple[int, int]] = set()
    out = sys.stdout
    opened = None
    write_header = args.format == "csv"
    if args.out:
        if args.resume:
            skip = sweep.scan_completed(args.out, args.format)
        has_body = (
            args.resume
            and os.path.exists(args.out)
            and os.path.getsize(args.out) > 0
        )
        opened = open(args.out, "a" if args.resume else "w", encoding="utf-8")
        out = opened
        write_header = args.format == "csv" and not has_body
    try:
        for _ in sweep.run_sweep(
            pmin,
            pmax,
            d_filter=args.order,
            verify_level=args.verify,
            out=out,
            fmt=args.format,
            skip=skip,
            strict=args.strict,
            jobs=jobs,
            write_header=write_header,
        ):
            pass
    finally:
        if opened is not None:
            opened.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    pmin = args.pmin if args.pmin is not None else args.prime
    pmax = args.pmax if args.pmax is not None else args.prime
    if pmin is None or pmax is None:
        raise ValueError("verify needs -p or --pmin/--pmax")
    failed = 0
    total = 0
    for p in primes_in_range(pmin, pmax):
        for d in sweep.admissible_orders(p, args.order):
            ctx = make_context(p, d, max_p=args.max_p)
            table = cyclotomy.compute_table(ctx)
            seq = waring.n_sequence(table, 1)
            solution = waring.solve(ctx)
            for check in sweep.full_checks(ctx, table, seq, solution):
                total += 1
                mark = "PASS" if check.passed else "FAIL"
                line = f"{mark} (p={p}, d={d}) {check.name}"
                if check.detail and not check.passed:
                    line += f": {check.detail}"
                print(line)
                if not check.passed:
                    failed += 1
    print(f"{total - failed}/{total} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFICATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclomod",
        description=(
            "Minimal numbers of d-th powers mod p, computed exactly from "
            "cyclotomic numbers, with independent cross-checks."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, prime_required=True):
        sp.add_argument("-p", "--prime", type=int, required=prime_required,
                        help="odd prime modulus")
        sp.add_argument("--max-p", type=int,
                        default=_env_int("CYCLOMOD_MAX_P", 0) or None,
                        help="override the size guard on p")

    sp = sub.add_parser("gd", help="print the worst-case summand count alone")
    common(sp)
    sp.add_argument("-d", "--order", type=int, required=True)
    sp.set_defaults(func=cmd_gd)

    sp = sub.add_parser("sd", help="per-class summand counts as JSON")
    common(sp)
    sp.add_argument("-d", "--order", type=int, required=True)
    sp.add_argument("-a", "--element", type=int,
                    help="also report the class and count for this residue")
    sp.set_defaults(func=cmd_sd)

    sp = sub.add_parser("cyclo", help="the d x d cyclotomic-number table")
    common(sp)
    sp.add_argument("-d", "--order", type=int, required=True)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_cyclo)

    sp = sub.add_parser("period", help="period polynomial and discriminant")
    common(sp)
    sp.add_argument("-d", "--order", type=int, required=True)
    sp.set_defaults(func=cmd_period)

    sp = sub.add_parser("series", help="class series coefficients as fractions")
    common(sp)
    sp.add_argument("-d", "--order", type=int, required=True)
    sp.add_argument("-j", "--class-index", type=int, required=True,
                    help="power class of -a")
    sp.add_argument("--series-order", type=int,
                    help="truncation order (default d+2)")
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("closed", help="closed form, representation, witness")
    common(sp)
    sp.add_argument("-d", "--order", type=int, choices=(3, 4), required=True)
    sp.set_defaults(func=cmd_closed)

    sp = sub.add_parser("oracle", help="brute-force count table as CSV")
    common(sp)
    sp.add_argument("-d", "--order", type=int, required=True)
    sp.add_argument("-k", "--k-max", type=int, required=True)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("sweep", help="solve a prime range, one record per (p, d)")
    common(sp, prime_required=False)
    sp.add_argument("--pmin", type=int)
    sp.add_argument("--pmax", type=int)
    sp.add_argument("-d", "--order", type=int,
                    help="restrict to one order (default: all divisors of p-1)")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out", help="append records to this file")
    sp.add_argument("--resume", action="store_true",
                    help="skip (p, d) keys already present in --out")
    sp.add_argument("--strict", action="store_true",
                    help="abort on the first failed record")
    sp.add_argument("--verify", choices=("fast", "full"), default="fast")
    sp.add_argument("--jobs", type=int, help="worker processes (default 1)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="run the full check battery, print PASS/FAIL")
    common(sp, prime_required=False)
    sp.add_argument("--pmin", type=int)
    sp.add_argument("--pmax", type=int)
    sp.add_argument("-d", "--order", type=int)
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage already; normalize other codes
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except DegenerateOrder as exc:
        _print_json(_trivial_payload(exc))
        return EXIT_OK
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except _VERIFICATION_ERRORS as exc:
        print(f"verification error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except CyclomodError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
