"""Exact integer arithmetic: primes, factorization and smooth-number counts.

Everything here works on Python ints and is exact; the only floating point
quantity is the de Bruijn exponent returned by :func:`bruijn_Z`.
"""

from __future__ import annotations

import math
import random
import threading
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError

TRIAL_DIVISION_LIMIT = 10_000

# Deterministic strong-pseudoprime witness sets (Jaeschke / Sorenson-Webster).
_MR_BOUNDS = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318_665_857_834_031_151_167_461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3_317_044_064_679_887_385_961_981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)


class _PrimeSieve:
    """Process-wide, lock-protected Eratosthenes sieve that grows on demand."""

    def __init__(self, limit=1 << 16):
        self._lock = threading.Lock()
        self.limit = 0
        self.primes: list[int] = []
        self._extend(limit)

    def _extend(self, limit):
        flags = bytearray([1]) * (limit + 1)
        flags[0:2] = b"\x00\x00"
        for p in range(2, math.isqrt(limit) + 1):
            if flags[p]:
                flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
        self.primes = [i for i in range(limit + 1) if flags[i]]
        self.limit = limit

    def upto(self, limit):
        """All primes <= limit (a fresh list slice)."""
        if limit > self.limit:
            with self._lock:
                if limit > self.limit:
                    self._extend(max(limit, 2 * self.limit))
        return self.primes[: bisect_right(self.primes, limit)]

    def first(self, count):
        while len(self.primes) < count:
            with self._lock:
                self._extend(2 * self.limit)
        return self.primes[:count]


_SIEVE = _PrimeSieve()


def primes_upto(limit: int) -> list[int]:
    """Return the primes p <= limit in increasing order."""
    if limit < 2:
        return []
    return _SIEVE.upto(limit)


def nth_prime(i: int) -> int:
    """The i-th prime, counting from ``nth_prime(1) == 2``."""
    if i < 1:
        raise DomainError(f"nth_prime needs i >= 1, got {i}")
    return _SIEVE.first(i)[i - 1]


def _strong_probable_prime(n, a):
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas_probable_prime(n):
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    if math.isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    inv2 = (n + 1) // 2
    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def _jacobi(a, n):
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_prime(n: int) -> bool:
    """Primality test.

    Deterministic Miller-Rabin below 3.3e24; above that a Baillie-PSW test
    (no known counterexample).
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    if n < 43 * 43:
        return True
    for bound, bases in _MR_BOUNDS:
        if n < bound:
            return all(_strong_probable_prime(n, a) for a in bases)
    return _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)


def _brent_rho(n, rng):
    """Return a nontrivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
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
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_into(n, out, rng):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    root = math.isqrt(n)
    if root * root == n:
        _split_into(root, out, rng)
        _split_into(root, out, rng)
        return
    d = _brent_rho(n, rng)
    _split_into(d, out, rng)
    _split_into(n // d, out, rng)


@dataclass(frozen=True)
class Factorization:
    """``sign * prod(p**e for p, e in factors)`` with primes strictly increasing."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        v = self.sign
        for p, e in self.factors:
            v *= p**e
        return v

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def factorize(n: int) -> Factorization:
    """Factor a nonzero integer.

    >>> factorize(-12)
    Factorization(sign=-1, factors=((2, 2), (3, 1)))
    """
    if n == 0:
        raise DomainError("cannot factor 0")
    sign = 1 if n > 0 else -1
    n = abs(n)
    found: dict[int, int] = {}
    for p in _SIEVE.upto(TRIAL_DIVISION_LIMIT):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if n > 1:
        if n < TRIAL_DIVISION_LIMIT**2:
            found[n] = found.get(n, 0) + 1
        else:
            # Seeded so repeated runs take identical paths.
            _split_into(n, found, random.Random(n))
    return Factorization(sign, tuple(sorted(found.items())))


def largest_prime_factor(n: int) -> int:
    """P+(n), the largest prime dividing n; undefined (DomainError) for |n| <= 1."""
    if abs(n) <= 1:
        raise DomainError(f"largest prime factor is undefined for {n}")
    return factorize(n).factors[-1][0]


@lru_cache(maxsize=4)
def largest_prime_factor_table(limit: int) -> tuple[int, ...]:
    """``table[k] == P+(k)`` for 2 <= k <= limit; table[1] = 1 and table[0] = 0."""
    table = [0] * (limit + 1)
    for p in range(2, limit + 1):
        if table[p] == 0:
            # Primes arrive in increasing order, so the largest one writes last.
            table[p::p] = [p] * len(range(p, limit + 1, p))
    if limit >= 1:
        table[1] = 1
    return tuple(table)


def psi_sieve(x: int, y: int) -> int:
    """Count y-smooth integers in [1, x] by direct enumeration of P+."""
    _check_psi_args(x, y)
    table = largest_prime_factor_table(x)
    return sum(1 for k in range(1, x + 1) if table[k] <= y)


def _check_psi_args(x, y):
    if x < 1 or y < 2:
        raise DomainError(f"psi needs x >= 1 and y >= 2, got x={x}, y={y}")


@lru_cache(maxsize=1 << 20)
def _psi_rec(x, k):
    # Count of n <= x whose prime factors all lie among the first k primes.
    if x == 0:
        return 0
    if k == 0:
        return 1
    primes = _SIEVE.first(k)
    pk = primes[k - 1]
    if pk >= x:
        return x
    if k == 1:
        return x.bit_length()
    if pk * pk > x:
        # Every n <= x has at most one prime factor above sqrt(x).
        j = bisect_right(primes, math.isqrt(x))
        return _psi_rec(x, j) + sum(x // p for p in primes[j:k])
    if k > 256:
        return _psi_rec(x, 1) + sum(_psi_rec(x // primes[i], i + 1) for i in range(1, k))
    return _psi_rec(x, k - 1) + _psi_rec(x // pk, k)


def psi_exact(x: int, y: int) -> int:
    """psi(x, y): how many 1 <= k <= x have no prime factor above y (1 counts).

    Uses the Buchstab-type recurrence psi(x, p_k) = psi(x, p_{k-1}) + psi(x / p_k, p_k)
    with memoization. :func:`psi_sieve` is the independent enumeration path.

    >>> psi_exact(10, 2)
    4
    """
    _check_psi_args(x, y)
    if y >= x:
        return x
    k = len(_SIEVE.upto(y))
    return _psi_rec(x, k)


def bruijn_Z(x: float, y: float) -> tuple[float, float]:
    """De Bruijn's exponent Z(x, y) and u = log x / log y, natural logs.

    ``log psi(x, y)`` is ``Z * (1 + o(1))`` for 2 < y <= x.
    """
    if not (2 < y <= x):
        raise DomainError(f"bruijn_Z needs 2 < y <= x, got x={x}, y={y}")
    lx, ly = math.log(x), math.log(y)
    u = lx / ly
    Z = math.log1p(y / lx) * u + math.log1p(lx / y) * y / ly
    return Z, u
