"""The degree-d integer polynomial whose roots are the Gauss periods.

The periods eta_0..eta_{d-1} are the class sums of p-th roots of unity.
Their power sums are already available exactly: sum_i eta_i^m = n(m-1, 0),
with the m = 0 sum equal to d.  Newton's identities then produce the
elementary symmetric functions, hence the monic integer polynomial
G(T) = prod (T - eta_i), without ever touching complex numbers.  Floating
point periods exist here too, but only as a numerical validation oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property

from .errors import IntegralityFailure, SanityFailure, ScaleGuard
from .ffield import FieldContext
from .waring import NSequence

#: numeric_periods is for validation only; summing 10^4 complex terms is
#: already pushing what double precision can certify.
DEFAULT_NUMERIC_MAX_P = 10_000


def numeric_tolerance(p: int) -> float:
    """Absolute tolerance policy for float-period comparisons."""
    return 1e-8 if p <= 100 else 1e-6


@dataclass(frozen=True)
class PeriodPolynomial:
    """Monic integer polynomial with the periods as roots.

    coeffs are ascending (constant term first), length d + 1.  The leading
    coefficient is 1 and the T^(d-1) coefficient is 1 because the periods
    sum to -1.
    """

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @cached_property
    def discriminant(self) -> int:
        """prod_{i<j} (eta_i - eta_j)^2, an exact (possibly huge) integer."""
        return _discriminant_from_coeffs(self.coeffs)

    def __call__(self, x):
        """Evaluate at x by Horner; works for ints, Fractions, complex."""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def reversed_coeffs(self) -> tuple[int, ...]:
        """Coefficients of T^d * G(1/T), ascending."""
        return tuple(reversed(self.coeffs))


def power_sums(seq: NSequence, m_max: int) -> list[int]:
    """[P_0, P_1, ..., P_m_max] with P_m = sum_i eta_i^m, exactly.

    P_0 = d by convention; P_m = n(m-1, 0) for m >= 1.
    """
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    return [seq.ctx.d] + [seq.n(m - 1, 0) for m in range(1, m_max + 1)]


def period_polynomial(seq: NSequence) -> PeriodPolynomial:
    """Integer coefficients of G(T) via Newton's identities on power sums.

    e_m = (1/m) * sum_{i=1..m} (-1)^(i-1) e_{m-i} P_i; every division must
    be exact because the e_m are integers (they are symmetric functions of
    algebraic integers fixed by the Galois action).  A remainder is a bug.
    """
    d = seq.ctx.d
    ps = power_sums(seq, d)
    e = [1]
    for m in range(1, d + 1):
        acc = 0
        sign = 1
        for i in range(1, m + 1):
            acc += sign * e[m - i] * ps[i]
            sign = -sign
        quot, rem = divmod(acc, m)
        if rem:
            raise IntegralityFailure(
                f"Newton step m={m} not integral for p={seq.ctx.p}, d={d}"
            )
        e.append(quot)
    # G(T) = sum_m (-1)^m e_m T^(d-m); ascending index j = d - m.
    coeffs = tuple((-1) ** (d - j) * e[d - j] for j in range(d + 1))
    if coeffs[d] != 1 or coeffs[d - 1] != 1:
        raise SanityFailure(
            f"period polynomial for p={seq.ctx.p}, d={d} is not monic with "
            f"trace -1: leading coefficients {coeffs[d - 1:]}"
        )
    return PeriodPolynomial(coeffs=coeffs)


def discriminant(poly: PeriodPolynomial) -> int:
    """Discriminant of G, exact, via the resultant of G and G'."""
    return poly.discriminant


def numeric_periods(
    ctx: FieldContext, *, max_p: int = DEFAULT_NUMERIC_MAX_P
) -> list[complex]:
    """Float approximations of the periods, for tests only.

    eta_i = sum over k of exp(2*pi*I * omega^(d*k+i) / p).  Each eta is a
    sum of f unit vectors, accumulated with compensated (exact-rounding)
    summation to keep cancellation error near machine epsilon.
    """
    p, d, f = ctx.p, ctx.d, ctx.f
    if p > max_p:
        raise ScaleGuard(f"numeric periods capped at p <= {max_p}, got {p}")
    # powers[m] = omega^m mod p
    powers = [1] * (p - 1)
    for m in range(1, p - 1):
        powers[m] = powers[m - 1] * ctx.omega % p
    tau = 2.0 * math.pi
    out = []
    for i in range(d):
        terms = [cmath.exp(1j * tau * powers[d * k + i] / p) for k in range(f)]
        out.append(
            complex(
                math.fsum(t.real for t in terms),
                math.fsum(t.imag for t in terms),
            )
        )
    return out


def _sylvester_matrix(fd: list[int], gd: list[int]) -> list[list[int]]:
    """Sylvester matrix of two polynomials given by descending coefficients."""
    n = len(fd) - 1
    m = len(gd) - 1
    size = n + m
    rows = []
    for shift in range(m):
        rows.append([0] * shift + fd + [0] * (size - shift - n - 1))
    for shift in range(n):
        rows.append([0] * shift + gd + [0] * (size - shift - m - 1))
    return rows


def _bareiss_determinant(matrix: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    m = [row[:] for row in matrix]
    n = len(m)
    sign = 1
    prev = 1
    for c in range(n - 1):
        if m[c][c] == 0:
            for r in range(c + 1, n):
                if m[r][c]:
                    m[c], m[r] = m[r], m[c]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[c][c]
        for r in range(c + 1, n):
            mrc = m[r][c]
            row_r = m[r]
            row_c = m[c]
            for j in range(c + 1, n):
                row_r[j] = (row_r[j] * pivot - mrc * row_c[j]) // prev
            row_r[c] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _resultant(f_asc: tuple[int, ...], g_asc: tuple[int, ...]) -> int:
    fd = list(reversed(f_asc))
    gd = list(reversed(g_asc))
    return _bareiss_determinant(_sylvester_matrix(fd, gd))


def _discriminant_from_coeffs(coeffs: tuple[int, ...]) -> int:
    d = len(coeffs) - 1
    deriv = tuple(k * coeffs[k] for k in range(1, d + 1))
    res = _resultant(coeffs, deriv)
    # leading coefficient is 1, so no division beyond the sign factor
    return (-1) ** (d * (d - 1) // 2) * res
