"""Prime-range sweep harness: solve, cross-check, and emit stable records.

A sweep walks primes in ascending order and, for each admissible order d
(every divisor of p-1 that is at least 2, or a single requested one),
solves all classes and emits one record.  Records are written incrementally
in ascending (p, d) order so interrupted runs can resume by skipping keys
already present in the output file.  Worker processes fan out over (p, d)
jobs; the writer consumes results in submission order, which keeps the
output deterministic regardless of the worker count.

verify_level "fast" runs the two exact solvers against each other (solve
always does).  "full" additionally arbitrates every class with the
brute-force oracle, checks the series-side valuation for every nontrivial
class, the low-order count identities, the classical table identities, and
(for d = 3 or 4) the closed forms and the formula tables.
"""

from __future__ import annotations

import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

from . import closedform, cyclotomy, oracle, series, waring
from .errors import AllZeroToOrder, CyclomodError
from .ffield import make_context, primes_in_range

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "p",
    "d",
    "f",
    "theta",
    "omega",
    "per_class_s",
    "g",
    "methods_agree",
    "closed_form_match",
    "elapsed",
)


@dataclass(frozen=True)
class SweepRecord:
    """One solved (p, d) pair plus its verification outcome.

    elapsed (milliseconds) is the only nondeterministic field and is
    excluded from the determinism contract; everything else must be
    byte-identical across runs.
    """

    p: int
    d: int
    f: int
    theta: int
    omega: int
    per_class_s: tuple[int, ...]
    g: int
    methods_agree: bool
    closed_form_match: bool | None
    elapsed: int


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def admissible_orders(p: int, d_filter: int | None = None) -> list[int]:
    """Divisors of p-1 that are >= 2, ascending; optionally one requested d."""
    divisors = sorted(
        d for d in range(2, p) if (p - 1) % d == 0
    )
    if d_filter is None:
        return divisors
    return [d_filter] if d_filter in divisors else []


def full_checks(
    ctx,
    table: cyclotomy.CyclotomyTable,
    seq: waring.NSequence,
    solution: waring.WaringSolution,
) -> list[CheckResult]:
    """The verification battery behind verify_level=full and the verify command."""
    checks: list[CheckResult] = []
    p, d, f, theta = ctx.p, ctx.d, ctx.f, ctx.theta

    report = cyclotomy.verify_identities(table)
    checks.append(
        CheckResult(
            name="table-identities",
            passed=report.passed,
            detail="; ".join(c.name + ": " + c.detail for c in report.failures()),
        )
    )

    brute = [
        oracle.brute_s(ctx, ctx.element_of_class(alpha)) for alpha in range(d)
    ]
    mismatches = [
        (alpha, s, b)
        for alpha, (s, b) in enumerate(zip(solution.per_class_s, brute))
        if s != b
    ]
    checks.append(
        CheckResult(
            name="oracle-agreement",
            passed=not mismatches,
            detail="" if not mismatches else f"classes off: {mismatches}",
        )
    )

    ord_bad = []
    for alpha in range(1, d):
        j = (alpha + theta) % d
        try:
            val = series.log_derivative_ord(seq, j)
        except AllZeroToOrder as exc:
            # guarded (never-expected) path: arbitration falls to brute force
            log.warning("series valuation gave up for (p=%s, d=%s, alpha=%s): %s",
                        p, d, alpha, exc)
            val = oracle.brute_s(ctx, ctx.element_of_class(alpha))
        if val != solution.per_class_s[alpha]:
            ord_bad.append((alpha, val, solution.per_class_s[alpha]))
    checks.append(
        CheckResult(
            name="series-valuation-agreement",
            passed=not ord_bad,
            detail="" if not ord_bad else f"classes off: {ord_bad}",
        )
    )

    low_bad = []
    for v in range(d):
        if seq.n(2, v) + f * f != p * table.counts[v][theta]:
            low_bad.append(("k=2", v))
        walk2 = sum(table.counts[v][i] * table.counts[i][theta] for i in range(d))
        expect3 = p * walk2 + (f * (seq.n(1, v) + f) if theta == 0 else 0)
        if seq.n(3, v) + f ** 3 != expect3:
            low_bad.append(("k=3", v))
    checks.append(
        CheckResult(
            name="low-order-count-identities",
            passed=not low_bad,
            detail="" if not low_bad else f"violations: {low_bad}",
        )
    )

    if d in (3, 4):
        kind = closedform.KIND_D3 if d == 3 else closedform.KIND_D4
        closed_g = closedform.g3_closed(p) if d == 3 else closedform.g4_closed(p)
        problems = []
        if closed_g != solution.g:
            problems.append(f"closed g={closed_g} vs solved g={solution.g}")
        try:
            closedform.resolve_sign(closedform.represent(p, kind), table)
        except CyclomodError as exc:
            problems.append(f"formula table: {exc}")
        if d == 4:
            witness = closedform.diophantine_witness(p)
            if (witness is not None) != (solution.g > 2):
                problems.append(
                    f"witness presence {witness is not None} vs g={solution.g}"
                )
        checks.append(
            CheckResult(
                name="closed-form-agreement",
                passed=not problems,
                detail="; ".join(problems),
            )
        )

    return checks


def solve_single(p: int, d: int, verify_level: str) -> SweepRecord:
    """Solve one (p, d) pair and run the checks for the requested level."""
    start = time.perf_counter()
    ctx = make_context(p, d)
    solution = waring.solve(ctx)
    closed_match: bool | None = None
    if verify_level == "full":
        table = cyclotomy.compute_table(ctx)
        seq = waring.n_sequence(table, 1)
        checks = full_checks(ctx, table, seq, solution)
        failures = [c for c in checks if not c.passed]
        if failures:
            raise CyclomodError(
                f"verification failed for (p={p}, d={ctx.d}): "
                + "; ".join(f"{c.name}: {c.detail}" for c in failures)
            )
        if ctx.d in (3, 4):
            closed_match = True
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return SweepRecord(
        p=ctx.p,
        d=ctx.d,
        f=ctx.f,
        theta=ctx.theta,
        omega=ctx.omega,
        per_class_s=solution.per_class_s,
        g=solution.g,
        methods_agree=True,
        closed_form_match=closed_match,
        elapsed=elapsed_ms,
    )


def emit(record: SweepRecord, fmt: str = "json") -> str:
    """One output line per record, stable field order.

    Mathematical integers are rendered as decimal strings (they can exceed
    64 bits in principle and must survive any JSON parser unchanged);
    booleans stay booleans and elapsed stays a plain integer.
    """
    if fmt == "json":
        body: dict[str, object] = {
            "p": str(record.p),
            "d": str(record.d),
            "f": str(record.f),
            "theta": str(record.theta),
            "omega": str(record.omega),
            "per_class_s": [str(s) for s in record.per_class_s],
            "g": str(record.g),
            "methods_agree": record.methods_agree,
        }
        if record.closed_form_match is not None:
            body["closed_form_match"] = record.closed_form_match
        body["elapsed"] = record.elapsed
        return json.dumps(body, separators=(",", ":"))
    if fmt == "csv":
        closed = (
            "" if record.closed_form_match is None
            else ("true" if record.closed_form_match else "false")
        )
        cells = (
            str(record.p),
            str(record.d),
            str(record.f),
            str(record.theta),
            str(record.omega),
            ";".join(str(s) for s in record.per_class_s),
            str(record.g),
            "true" if record.methods_agree else "false",
            closed,
            str(record.elapsed),
        )
        return ",".join(cells)
    raise ValueError(f"unknown format {fmt!r}")


def parse_record_key(line: str, fmt: str) -> tuple[int, int] | None:
    """(p, d) key of an emitted line, or None for headers/blank lines."""
    line = line.strip()
    if not line:
        return None
    if fmt == "json":
        data = json.loads(line)
        return int(data["p"]), int(data["d"])
    cells = line.split(",")
    if cells[0] == "p":
        return None
    return int(cells[0]), int(cells[1])


def scan_completed(path: str, fmt: str) -> set[tuple[int, int]]:
    """Keys already present in an output file; tolerates a torn last line.

    A trailing line without a newline (an interrupted write) is truncated
    away so the resumed run can append cleanly.
    """
    done: set[tuple[int, int]] = set()
    if not os.path.exists(path):
        return done
    with open(path, "rb+") as fh:
        data = fh.read()
        if data and not data.endswith(b"\n"):
            keep = data.rfind(b"\n") + 1
            fh.truncate(keep)
            data = data[:keep]
    for line in data.decode("utf-8").splitlines():
        try:
            key = parse_record_key(line, fmt)
        except (ValueError, KeyError, json.JSONDecodeError):
            log.warning("ignoring unparseable line in %s: %.60s", path, line)
            continue
        if key is not None:
            done.add(key)
    return done


def _solve_job(args: tuple[int, int, str]):
    p, d, verify_level = args
    try:
        return ("ok", solve_single(p, d, verify_level))
    except CyclomodError as exc:
        return ("err", (p, d), f"{type(exc).__name__}: {exc}")


def run_sweep(
    p_min: int,
    p_max: int,
    d_filter: int | None = None,
    verify_level: str = "fast",
    *,
    out: TextIO | None = None,
    fmt: str = "json",
    skip: set[tuple[int, int]] | None = None,
    strict: bool = False,
    jobs: int = 1,
    write_header: bool = False,
) -> Iterator[SweepRecord]:
    """Yield records for every admissible (p, d) in range, ascending.

    With out set, each record is also written (and flushed) as it is
    produced, so a killed run leaves a resumable file behind.  Failures
    are reported on stderr and skipped unless strict is set.
    """
    if verify_level not in ("fast", "full"):
        raise ValueError(f"verify_level must be fast or full, got {verify_level!r}")
    if not 2 < p_min <= p_max:
        raise ValueError(f"need 2 < p_min <= p_max, got {p_min}..{p_max}")
    skip = skip or set()
    keys = [
        (p, d)
        for p in primes_in_range(p_min, p_max)
        for d in admissible_orders(p, d_filter)
        if (p, d) not in skip
    ]
    if out is not None and write_header and fmt == "csv":
        out.write(",".join(CSV_COLUMNS) + "\n")
        out.flush()

    def results() -> Iterable:
        tasks = [(p, d, verify_level) for p, d in keys]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                # map() preserves submission order: it is the reorder buffer.
                yield from pool.map(_solve_job, tasks, chunksize=4)
        else:
            yield from map(_solve_job, tasks)

    for outcome in results():
        if outcome[0] == "err":
            _, key, message = outcome
            print(f"sweep: (p={key[0]}, d={key[1]}) failed: {message}",
                  file=sys.stderr)
            if strict:
                raise CyclomodError(message)
            continue
        record = outcome[1]
        if out is not None:
            out.write(emit(record, fmt) + "\n")
            out.flush()
        yield record
