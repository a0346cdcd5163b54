"""Shared helpers: independent oracles the implementation must agree with.

Everything here is deliberately naive and self-contained so it can
arbitrate against the production code paths: the cyclotomic table comes
from the literal definitional double loop, reachability from literal
boolean matrix powers, and the count identities from integer matrix powers
of the table itself.
"""

from __future__ import annotations

import pytest

from cyclomod import make_context
from cyclomod.cyclotomy import CyclotomyTable
from cyclomod.ffield import FieldContext


def definitional_cyclotomic_counts(ctx: FieldContext) -> list[list[int]]:
    """(i, j) counted straight from the defining double loop over (u, v)."""
    p, d, f = ctx.p, ctx.d, ctx.f
    powers = [1] * (p - 1)
    for m in range(1, p - 1):
        powers[m] = powers[m - 1] * ctx.omega % p
    counts = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            hits = 0
            for u in range(f):
                lhs = (1 + powers[d * u + i]) % p
                for v in range(f):
                    if lhs == powers[d * v + j]:
                        hits += 1
            counts[i][j] = hits
    return counts


def bool_matrix_multiply(a, b):
    n = len(a)
    return [
        [1 if any(a[i][k] and b[k][j] for k in range(n)) else 0 for j in range(n)]
        for i in range(n)
    ]


def s_by_matrix_powers(table: CyclotomyTable, alpha: int) -> int | None:
    """Least s with a nonzero (alpha+theta, theta) entry of M^(s-1).

    Literal translation of the matrix formulation, powers taken one by one;
    None if no power up to M^(d-1)... in fact up to M^d shows a walk.
    """
    ctx = table.ctx
    d = ctx.d
    src = (alpha + ctx.theta) % d
    tgt = ctx.theta
    power = [[1 if i == j else 0 for j in range(d)] for i in range(d)]  # M^0
    for s in range(1, d + 2):
        if power[src][tgt]:
            return s
        power = bool_matrix_multiply(power, table.bool_matrix)
    return None


def int_matrix_multiply(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def count_matrix_powers(table: CyclotomyTable, up_to: int) -> list:
    """[C^0, C^1, ..., C^up_to] for the integer count matrix C."""
    d = table.ctx.d
    powers = [[[1 if i == j else 0 for j in range(d)] for i in range(d)]]
    counts = [list(row) for row in table.counts]
    for _ in range(up_to):
        powers.append(int_matrix_multiply(powers[-1], counts))
    return powers


@pytest.fixture(scope="session")
def ctx_7_3():
    return make_context(7, 3)


@pytest.fixture(scope="session")
def ctx_13_4():
    return make_context(13, 4)


@pytest.fixture(scope="session")
def ctx_5_4():
    return make_context(5, 4)
