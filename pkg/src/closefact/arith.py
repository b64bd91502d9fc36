"""Exact integer arithmetic: factorization, divisor enumeration, range sieves,
and the sixth-power comparisons that replace irrational arithmetic everywhere
else in the package."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

#: Trial division removes every prime factor below this before Brent's rho runs.
TRIAL_DIVISION_LIMIT = 1_000_000

#: Largest n_hi accepted by sieve_divisor_lists; guards table memory.
DEFAULT_SIEVE_CEILING = 10_000_000

# Deterministic Miller-Rabin witness set (exact for every n < 3.3e24).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class SieveBudgetError(ValueError):
    """Requested sieve range exceeds the configured ceiling."""


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer with its prime-power decomposition, primes ascending."""

    n: int
    prime_powers: tuple[tuple[int, int], ...]

    def tau(self) -> int:
        """Divisor count: product of (exponent + 1)."""
        out = 1
        for _, e in self.prime_powers:
            out *= e + 1
        return out

    def verify(self) -> bool:
        """Recompute the product and re-check ordering and primality of the bases."""
        prod = 1
        prev = 1
        for p, e in self.prime_powers:
            if p <= prev or e < 1 or not is_prime(p):
                return False
            prev = p
            prod *= p**e
        return prod == self.n


@dataclass(frozen=True)
class DivisorList:
    """All divisors of n in strictly increasing order."""

    n: int
    divisors: tuple[int, ...]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_factor(n: int, c: int) -> int:
    """One Brent-cycle rho attempt on f(x) = x^2 + c mod n.

    Fully deterministic: the caller retries with incremented c until a
    non-trivial factor appears. Returns a divisor of n, possibly n itself.
    """
    y, r, q = 2, 1, 1
    g = 1
    x = ys = y
    m = 128
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        # backtrack one step at a time from the last saved point
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g


def _split_completely(m: int) -> list[int]:
    """Prime factors (with multiplicity) of m, all of which exceed the
    trial-division limit."""
    stack = [m]
    out: list[int] = []
    while stack:
        v = stack.pop()
        if is_prime(v):
            out.append(v)
            continue
        g = v
        c = 1
        while g == v or g == 1:
            g = _brent_factor(v, c)
            c += 1
        stack.append(g)
        stack.append(v // g)
    return out


def factorize(n: int) -> FactoredInteger:
    """Deterministic prime factorization; n = 1 yields an empty decomposition."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    counts: dict[int, int] = {}
    m = n
    for p in (2, 3):
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    p = 5
    step = 2
    limit = min(math.isqrt(m), TRIAL_DIVISION_LIMIT)
    while p <= limit:
        if m % p == 0:
            while m % p == 0:
                counts[p] = counts.get(p, 0) + 1
                m //= p
            limit = min(math.isqrt(m), TRIAL_DIVISION_LIMIT)
        p += step
        step = 6 - step
    if m > 1:
        if m <= (TRIAL_DIVISION_LIMIT + 1) ** 2 or is_prime(m):
            # trial division covered sqrt(m), or m is provably prime
            counts[m] = counts.get(m, 0) + 1
        else:
            for q in _split_completely(m):
                counts[q] = counts.get(q, 0) + 1
    return FactoredInteger(n, tuple(sorted(counts.items())))


def divisors(f: FactoredInteger) -> DivisorList:
    """Complete sorted divisor list expanded from the prime powers."""
    divs = [1]
    for p, e in f.prime_powers:
        prev = divs[:]
        q = 1
        for _ in range(e):
            q *= p
            divs += [d * q for d in prev]
    divs.sort()
    return DivisorList(f.n, tuple(divs))


_SPF_LIMIT = 0
_SPF: np.ndarray = np.zeros(1, dtype=np.int64)


def smallest_prime_factors(limit: int) -> np.ndarray:
    """Table t with t[k] = smallest prime factor of k (t[0] = t[1] = 0).

    Cached module-wide and only rebuilt when a larger limit is requested,
    so parallel scans can build it once up front and share it read-only.
    """
    global _SPF_LIMIT, _SPF
    if limit <= _SPF_LIMIT:
        return _SPF
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            view = spf[p * p :: p]
            view[view == 0] = p
    unmarked = np.nonzero(spf[2:] == 0)[0] + 2
    spf[unmarked] = unmarked
    _SPF = spf
    _SPF_LIMIT = limit
    return _SPF


def _divisors_via_spf(n: int, spf: np.ndarray) -> list[int]:
    """Sorted divisor list of n built by exponent-vector expansion."""
    divs = [1]
    m = n
    while m > 1:
        p = int(spf[m])
        prev = divs[:]
        q = 1
        while m % p == 0:
            m //= p
            q *= p
            divs += [d * q for d in prev]
    divs.sort()
    return divs


def sieve_divisor_lists(
    n_lo: int, n_hi: int, ceiling: int = DEFAULT_SIEVE_CEILING
) -> Iterator[DivisorList]:
    """Yield the DivisorList of every n in [n_lo, n_hi] in ascending order.

    Agrees with divisors(factorize(n)) for every n. Range and budget are
    validated eagerly; n_hi above the ceiling raises SieveBudgetError.
    """
    if n_lo < 2 or n_lo > n_hi:
        raise ValueError("need 2 <= n_lo <= n_hi")
    if n_hi > ceiling:
        raise SieveBudgetError(f"n_hi={n_hi} exceeds the sieve ceiling {ceiling}")
    spf = smallest_prime_factors(n_hi)

    def _generate() -> Iterator[DivisorList]:
        for n in range(n_lo, n_hi + 1):
            yield DivisorList(n, tuple(_divisors_via_spf(n, spf)))

    return _generate()


def pow6_compare(lhs_base: int, rhs_scale: int, rhs: int) -> int:
    """Exact ordering of lhs_base**6 versus rhs_scale*rhs: -1, 0 or +1.

    This is the primitive behind every test of the form
    g > 2^(2/3) * n^(1/6) + r: since (2^(2/3))^6 = 16, scaling by the sixth
    power of the denominator of r turns the comparison into integers.
    """
    lhs = lhs_base**6
    r = rhs_scale * rhs
    return (lhs > r) - (lhs < r)
