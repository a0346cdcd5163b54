"""Prime fields: primality, primitive roots, and the index (discrete log) table.

A FieldContext fixes an odd prime p, the smallest positive primitive root
omega, the full table of indices ind(a) with omega^ind(a) = a, an order d
dividing p-1, the cofactor f = (p-1)/d, and theta, the class of -1 mod d.
The index table is built by one full enumeration of the powers of omega, so
construction is O(p) in time and memory; everything downstream is O(p) anyway.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

from .errors import DegenerateOrder, NotPrime, SanityFailure, ScaleGuard, ZeroArgument

#: Default cap on p.  Index tables take O(p) memory; raise the cap explicitly
#: (max_p argument or CYCLOMOD_MAX_P) when you mean it.
DEFAULT_MAX_P = 1 << 22

# Witness set making Miller-Rabin deterministic for n < 3.3 * 10^24, far
# beyond the supported range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for the supported range.

    >>> [k for k in range(2, 20) if is_prime(k)]
    [2, 3, 5, 7, 11, 13, 17, 19]
    """
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    m = n - 1
    r = (m & -m).bit_length() - 1
    odd = m >> r
    for a in _MR_BASES:
        x = pow(a, odd, n)
        if x == 1 or x == m:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == m:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending, by trial division."""
    found = []
    for q in (2, 3):
        if n % q == 0:
            found.append(q)
            while n % q == 0:
                n //= q
    q = 5
    while q * q <= n:
        for c in (q, q + 2):
            if n % c == 0:
                found.append(c)
                while n % c == 0:
                    n //= c
        q += 6
    if n > 1:
        found.append(n)
    return found


def smallest_primitive_root(p: int) -> int:
    """Smallest positive generator of the multiplicative group mod p."""
    if p == 3:
        return 2
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise SanityFailure(f"no primitive root found for p={p}")


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes in [lo, hi] via a sieve."""
    if hi < 2:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for q in range(2, math.isqrt(hi) + 1):
        if sieve[q]:
            sieve[q * q :: q] = b"\x00" * len(sieve[q * q :: q])
    return [n for n in range(max(lo, 2), hi + 1) if sieve[n]]


def _max_p_limit(max_p: int | None) -> int:
    if max_p is not None:
        return max_p
    env = os.environ.get("CYCLOMOD_MAX_P")
    if env:
        return int(env)
    return DEFAULT_MAX_P


@dataclass(frozen=True)
class FieldContext:
    """Immutable field data shared by every solver.

    Safe to hand to concurrent workers: nothing here mutates after
    construction.
    """

    p: int
    omega: int
    d: int
    f: int
    theta: int
    index_table: tuple[int, ...] = field(repr=False)

    def index_of(self, a: int) -> int:
        """ind(a): the k in 0..p-2 with omega^k = a mod p."""
        r = a % self.p
        if r == 0:
            raise ZeroArgument(a)
        return self.index_table[r]

    def class_of(self, a: int) -> int:
        """Power class of a: ind(a) mod d.  Class 0 is the d-th powers."""
        return self.index_of(a) % self.d

    def element_of_class(self, alpha: int) -> int:
        """A canonical representative of class alpha: omega^alpha mod p."""
        return pow(self.omega, alpha % self.d, self.p)


def make_context(p: int, d: int, *, max_p: int | None = None) -> FieldContext:
    """Build the field context for (p, d).

    d is replaced by gcd(d, p-1) since d-th powers only depend on that gcd.
    A reduced order of 1 means every unit is a d-th power; that case raises
    DegenerateOrder (carrying the trivial answer) rather than producing a
    context no solver accepts.
    """
    if not is_prime(p):
        raise NotPrime(p)
    if d < 1:
        raise ValueError(f"order must be a positive integer, got {d}")
    d_eff = math.gcd(d, p - 1)
    if d_eff < 2:
        raise DegenerateOrder(p, d)
    limit = _max_p_limit(max_p)
    if p > limit:
        raise ScaleGuard(f"p={p} exceeds the configured cap {limit}")

    omega = smallest_primitive_root(p)
    table = [-1] * p
    x = 1
    for k in range(p - 1):
        table[x] = k
        x = x * omega % p
    if x != 1:
        raise SanityFailure(f"omega={omega} does not have order p-1 mod {p}")

    f = (p - 1) // d_eff
    theta = ((p - 1) // 2) % d_eff
    expected_theta = 0 if f % 2 == 0 else d_eff // 2
    if theta != expected_theta:
        raise SanityFailure(
            f"theta={theta} contradicts the parity rule for p={p}, d={d_eff}"
        )
    return FieldContext(
        p=p, omega=omega, d=d_eff, f=f, theta=theta, index_table=tuple(table)
    )
