"""Integer arithmetic for circles a^2 + b^2 = n.

Factorization, the sum-of-two-squares classification, lattice point
enumeration, and the canonical angles contributed by primes p = 1 (mod 4).
Everything is deterministic; trial division is adequate at the scales the
command line caps out at.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple


class GaussianPoint(NamedTuple):
    a: int
    b: int


@dataclass(frozen=True)
class Factorization:
    """n as a product of primes; factors sorted by prime, exponents >= 1."""

    n: int
    factors: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SplitPrimeAngle:
    """Canonical angle of a prime p = 1 (mod 4).

    lattice_angle is atan2(min(|a|,|b|), max(|a|,|b|)) for a^2 + b^2 = p,
    folded into [0, pi/4]; desym_angle is 4 times that, in [0, pi].
    """

    p: int
    lattice_angle: float
    desym_angle: float


class CillerueloResult(NamedTuple):
    """Primes with small lattice angle; exhausted means the search limit was
    reached before the requested count."""

    primes: list[int]
    exhausted: bool


# gaps between consecutive integers coprime to 2, 3, 5, starting from 7
_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)

_MAX_N = 2**63 - 1


def factorize(n: int) -> Factorization:
    """Factor n by trial division over a 2,3,5 wheel. 1 <= n < 2**63."""
    if not isinstance(n, int) or not 1 <= n <= _MAX_N:
        raise ValueError(f"factorize expects an integer in [1, 2**63-1], got {n!r}")
    m = n
    factors: list[tuple[int, int]] = []
    for p in (2, 3, 5):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    p, i = 7, 0
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p += _WHEEL[i]
        i = (i + 1) & 7
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = factorize(n)
    return f.factors == ((n, 1),)


def is_in_S(n: int) -> bool:
    """True iff n is a sum of two integer squares: every prime q = 3 (mod 4)
    divides n to an even power."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"is_in_S expects a positive integer, got {n!r}")
    return all(e % 2 == 0 for p, e in factorize(n).factors if p % 4 == 3)


def r2(n: int) -> int:
    """Number of lattice points on the circle of radius sqrt(n):
    4 * prod(e_i + 1) over primes p_i = 1 (mod 4), or 0 outside S."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"r2 expects a positive integer, got {n!r}")
    out = 4
    for p, e in factorize(n).factors:
        if p % 4 == 1:
            out *= e + 1
        elif p % 4 == 3 and e % 2 == 1:
            return 0
    return out


def lattice_points(n: int) -> set[GaussianPoint]:
    """All integer solutions of a^2 + b^2 = n.

    Loops a over [0, sqrt(n)] with a perfect-square test and applies the
    sign/swap symmetries; doubles as an independent count for r2.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"lattice_points expects a positive integer, got {n!r}")
    pts: set[GaussianPoint] = set()
    for a in range(math.isqrt(n) + 1):
        b2 = n - a * a
        b = math.isqrt(b2)
        if b * b == b2:
            for s, t in ((a, b), (b, a)):
                pts.add(GaussianPoint(s, t))
                pts.add(GaussianPoint(-s, t))
                pts.add(GaussianPoint(s, -t))
                pts.add(GaussianPoint(-s, -t))
    return pts


def _sqrt_minus_one(p: int) -> int:
    # x with x^2 = -1 (mod p); exists exactly for p = 1 (mod 4)
    e = (p - 1) // 4
    for a in range(2, p):
        x = pow(a, e, p)
        if x * x % p == p - 1:
            return x
    raise ArithmeticError(f"no square root of -1 modulo {p}")


def two_squares(p: int) -> tuple[int, int]:
    """The representation p = a^2 + b^2 with a >= b >= 1, for prime
    p = 1 (mod 4), by descent on the Gaussian gcd (Cornacchia)."""
    r0, r1 = p, _sqrt_minus_one(p)
    bound = math.isqrt(p)
    while r1 > bound:
        r0, r1 = r1, r0 % r1
    a = r1
    b2 = p - a * a
    b = math.isqrt(b2)
    if b * b != b2:
        raise ArithmeticError(f"descent failed for {p}")
    return (max(a, b), min(a, b))


def split_prime_angle(p: int) -> SplitPrimeAngle:
    """Canonical angle data for a prime p = 1 (mod 4)."""
    if not isinstance(p, int) or p % 4 != 1 or not is_prime(p):
        raise ValueError(f"split_prime_angle expects a prime = 1 (mod 4), got {p!r}")
    a, b = two_squares(p)
    ang = math.atan2(b, a)
    return SplitPrimeAngle(p, ang, 4.0 * ang)


def primes_up_to(limit: int) -> list[int]:
    """Primes <= limit by a byte sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * ((limit - p * p) // p + 1)
    return [i for i, f in enumerate(sieve) if f]


def cilleruelo_primes(
    epsilon: float, count: int, search_limit: int
) -> CillerueloResult:
    """Up to `count` primes p = 1 (mod 4), p <= search_limit, whose lattice
    angle is below epsilon, in increasing order.

    The result's `exhausted` flag distinguishes a full list from a search
    that ran out of primes first.
    """
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    if count < 1 or search_limit < 1:
        raise ValueError("count and search_limit must be positive")
    found: list[int] = []
    for p in primes_up_to(search_limit):
        if p % 4 != 1:
            continue
        if split_prime_angle(p).lattice_angle < epsilon:
            found.append(p)
            if len(found) == count:
                return CillerueloResult(found, False)
    return CillerueloResult(found, True)
