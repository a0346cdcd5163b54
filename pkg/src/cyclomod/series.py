"""Exact rational power series attached to each power class.

For class j define I_j(T) = sum c_k T^k by c_0 = 1 and

    c_k = -(1/k) * sum_{l=0}^{k-1} c_l * n(k-1-l, j).

This makes -I_j'/I_j the generating series sum_k n(k, j) T^k, so the
difference 1/(1 - f*T) - I_j'/I_j has k-th coefficient f^k + n(k, j),
which is p times the representation count.  Its valuation (index of the
first nonzero coefficient) is therefore the minimal representation length
for the class with class(-a) = j, giving a third, series-side route to the
same answer.

Every coefficient is a Fraction and every zero test is exact; floating
point is banned in this module because the valuation is a strict zero
test.  k! * c_k is always an integer (immediate from the recurrence by
induction), which the test suite asserts for everything computed.

For j = 0 the series is the reversed period polynomial: all coefficients
past degree d vanish.  For j != 0 it is never a polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AllZeroToOrder
from .periods import PeriodPolynomial
from .waring import NSequence

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class RationalSeries:
    """A truncated power series with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        """Truncation order: coefficients 0..order are meaningful."""
        return len(self.coeffs) - 1

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all vanish."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def derivative(self) -> "RationalSeries":
        return RationalSeries(
            tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1)
        )

    def inverse(self, order: int) -> "RationalSeries":
        """Multiplicative inverse, truncated; requires a nonzero constant."""
        a = self.coeffs
        if not a or a[0] == 0:
            raise ZeroDivisionError("series with zero constant term")
        inv0 = 1 / a[0]
        b = [inv0]
        for k in range(1, order + 1):
            acc = _ZERO
            for l in range(1, min(k, self.order) + 1):
                acc += a[l] * b[k - l]
            b.append(-inv0 * acc)
        return RationalSeries(tuple(b))

    def multiply(self, other: "RationalSeries", order: int) -> "RationalSeries":
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(order + 1):
            acc = _ZERO
            lo = max(0, k - len(b) + 1)
            hi = min(k, len(a) - 1)
            for i in range(lo, hi + 1):
                acc += a[i] * b[k - i]
            out.append(acc)
        return RationalSeries(tuple(out))

    def subtract(self, other: "RationalSeries") -> "RationalSeries":
        order = min(self.order, other.order)
        return RationalSeries(
            tuple(self.coeffs[k] - other.coeffs[k] for k in range(order + 1))
        )

    @staticmethod
    def geometric(ratio: int, order: int) -> "RationalSeries":
        """1 / (1 - ratio*T) truncated: coefficients ratio^k."""
        out = [_ONE]
        for _ in range(order):
            out.append(out[-1] * ratio)
        return RationalSeries(tuple(out))


def i_series(seq: NSequence, j: int, order: int) -> RationalSeries:
    """The class series I_j to the given truncation order."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    j %= seq.ctx.d
    if order >= 1:
        seq.extend(order - 1)
    nvals = [seq.n(k, j) for k in range(order)]
    c = [_ONE]
    for k in range(1, order + 1):
        acc = _ZERO
        for l in range(k):
            acc += c[l] * nvals[k - 1 - l]
        c.append(-acc / k)
    return RationalSeries(tuple(c))


def log_derivative_series(seq: NSequence, j: int, order: int) -> RationalSeries:
    """The difference series 1/(1 - f*T) - I_j'/I_j, truncated at order.

    Built literally: invert I_j, multiply by its derivative, subtract from
    the geometric series.  The k-th coefficient equals (f^k + n(k, j)),
    i.e. p times a representation count; the coefficient at k = 0 is
    always zero.
    """
    source = i_series(seq, j, order + 1)
    ratio = source.derivative().multiply(source.inverse(order), order)
    return RationalSeries.geometric(seq.ctx.f, order).subtract(ratio)


def _difference_terms(seq: NSequence, j: int, order: int):
    """Yield (k, D_k) for the difference series, one coefficient at a time.

    Runs the same inversion-and-product arithmetic as log_derivative_series
    but incrementally, so a caller hunting for the valuation can stop at
    the first nonzero coefficient instead of materializing the whole
    truncation.  The two paths are asserted equal in the test suite.
    """
    ctx = seq.ctx
    j %= ctx.d
    c = [_ONE]  # I_j
    b = [_ONE]  # 1/I_j (valid since c_0 = 1)
    nvals: list[int] = []
    fk = _ONE
    for k in range(order + 1):
        while len(c) <= k + 1:  # derivative at k needs c_{k+1}
            m = len(c)
            nvals.append(seq.n(m - 1, j))
            acc = _ZERO
            for l in range(m):
                acc += c[l] * nvals[m - 1 - l]
            c.append(-acc / m)
        while len(b) <= k:
            m = len(b)
            acc = _ZERO
            for l in range(1, m + 1):
                acc += c[l] * b[m - l]
            b.append(-acc)
        ratio_k = _ZERO
        for i in range(k + 1):
            ratio_k += (i + 1) * c[i + 1] * b[k - i]
        yield k, fk - ratio_k
        fk *= ctx.f


def log_derivative_ord(seq: NSequence, j: int) -> int:
    """Valuation of the difference series: the series route to the answer.

    Truncation starts at d + 2 (enough for every reachable class, where
    the answer is at most d) and extends once to 2d before giving up; an
    all-zero series at that point is handed back to the caller to route to
    the brute-force oracle.  Coefficients are produced lazily, so the scan
    stops as soon as the first nonzero one appears.
    """
    d = seq.ctx.d
    cap = max(d + 2, 2 * d)
    for k, value in _difference_terms(seq, j, cap):
        if value:
            return k
    raise AllZeroToOrder(
        f"difference series vanishes to order {cap} for class j={j} "
        f"(p={seq.ctx.p}, d={d})"
    )


def reciprocal_check(series: RationalSeries, poly: PeriodPolynomial) -> bool:
    """True iff the series is exactly the reversed period polynomial.

    Checks c_k against the reversed coefficients for k <= d and demands
    c_k = 0 for d < k <= order, certifying the series is that integer
    polynomial up to the computed truncation.
    """
    d = poly.degree
    if series.order < d + 2:
        raise ValueError(
            f"series order {series.order} too small; need at least {d + 2}"
        )
    rev = poly.reversed_coeffs()
    for k in range(d + 1):
        if series.coeffs[k] != rev[k]:
            return False
    return all(series.coeffs[k] == 0 for k in range(d + 1, series.order + 1))


def factorial_denominator_violations(series: RationalSeries) -> list[int]:
    """Indices k where k! * c_k is not an integer (always empty if correct).

    Equivalent to checking that each reduced denominator divides k!.
    """
    bad = []
    kfac = 1
    for k, c in enumerate(series.coeffs):
        if k:
            kfac *= k
        if kfac % c.denominator:
            bad.append(k)
    return bad
