import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from multdep.arith import (
    bruijn_Z,
    factorize,
    is_prime,
    largest_prime_factor,
    nth_prime,
    primes_upto,
    psi_exact,
    psi_sieve,
)
from multdep.errors import DomainError
from oracles import sieve_primes, smooth_count, trial_division

nonzero = st.integers(-(10**6), 10**6).filter(bool)


def test_factorize_units():
    assert factorize(1).sign == 1 and factorize(1).factors == ()
    assert factorize(-1).sign == -1 and factorize(-1).factors == ()


def test_factorize_small():
    f = factorize(-12)
    assert (f.sign, f.factors) == (-1, ((2, 2), (3, 1)))


def test_factorize_fermat_f6():
    f = factorize(2**64 + 1)
    assert f.factors == ((274177, 1), (67280421310721, 1))
    # oracle: the product reconstructs and both factors are prime per sympy
    assert 274177 * 67280421310721 == 2**64 + 1
    assert sympy.isprime(274177) and sympy.isprime(67280421310721)


def test_factorize_zero_rejected():
    with pytest.raises(DomainError):
        factorize(0)


@pytest.mark.parametrize("n", [
    999_999_000_001 * 1_000_003,  # two large primes: forces rho
    (2**31 - 1) ** 2,
    104_729**3 * 7,
    2**89 - 1,  # prime beyond the deterministic MR tables
])
def test_factorize_hard_cases(n):
    f = factorize(n)
    assert f.value() == n
    assert dict(f.factors) == sympy.factorint(n)


@given(nonzero)
def test_factorize_round_trip(n):
    f = factorize(n)
    assert f.value() == n
    primes = [p for p, _ in f.factors]
    assert primes == sorted(set(primes))
    assert all(e >= 1 and is_prime(p) for p, e in f.factors)
    assert list(f.factors) == trial_division(n)


@given(nonzero, nonzero)
def test_factorize_multiplicative(a, b):
    merged = dict(factorize(a).factors)
    for p, e in factorize(b).factors:
        merged[p] = merged.get(p, 0) + e
    ab = factorize(a * b)
    assert dict(ab.factors) == merged
    assert ab.sign == factorize(a).sign * factorize(b).sign


def test_is_prime_against_sympy():
    rng = random.Random(7)
    samples = [rng.randrange(2, 10**30) for _ in range(2000)]
    # strong pseudoprimes and Carmichael numbers
    samples += [561, 1105, 2047, 3215031751, 3825123056546413051, 318665857834031151167461]
    samples += [3317044064679887385961981, 2**127 - 1, (2**61 - 1) * (2**67 - 1)]
    for n in samples:
        assert is_prime(n) == sympy.isprime(n), n


def test_largest_prime_factor():
    assert largest_prime_factor(12) == 3
    assert largest_prime_factor(-97) == 97
    assert largest_prime_factor(600851475143) == max(p for p, _ in trial_division(600851475143))


@pytest.mark.parametrize("n", [0, 1, -1])
def test_largest_prime_factor_undefined_for_units(n):
    with pytest.raises(DomainError):
        largest_prime_factor(n)


@given(st.integers(2, 10**9))
def test_largest_prime_factor_sign_symmetric(n):
    assert largest_prime_factor(n) == largest_prime_factor(-n)


def test_nth_prime():
    assert nth_prime(1) == 2
    assert nth_prime(2) == 3
    assert nth_prime(25) == sieve_primes(100)[24] == 97
    assert nth_prime(10_000) == sympy.prime(10_000)
    with pytest.raises(DomainError):
        nth_prime(0)


def test_primes_upto_matches_sieve():
    assert primes_upto(1000) == sieve_primes(1000)
    assert primes_upto(1) == []


def test_psi_values():
    assert psi_exact(10, 2) == 4
    assert psi_exact(100, 10) == smooth_count(100, 10) == 46
    assert psi_exact(37, 50) == 37
    assert psi_exact(1, 2) == 1


def test_psi_large_against_sieve():
    assert psi_exact(10**6, 100) == psi_sieve(10**6, 100)
    assert psi_exact(10**6, 997) == psi_sieve(10**6, 997)
    assert psi_exact(200_000, 450) == psi_sieve(200_000, 450)


@pytest.mark.parametrize("x,y", [(0, 2), (5, 1)])
def test_psi_domain(x, y):
    with pytest.raises(DomainError):
        psi_exact(x, y)


@settings(max_examples=50)
@given(st.integers(1, 3000), st.integers(2, 200))
def test_psi_monotone(x, y):
    assert psi_exact(x, y) <= psi_exact(x + 1, y)
    assert psi_exact(x, y) <= psi_exact(x, y + 1)


@pytest.mark.parametrize("x", [10**3, 10**4, 10**5])
@pytest.mark.parametrize("y", [10, 30, 100])
def test_psi_tracks_bruijn_exponent(x, y):
    Z, _ = bruijn_Z(x, y)
    assert 0.5 <= math.log(psi_exact(x, y)) / Z <= 1.5


def test_bruijn_Z_values():
    # frozen from a 40-digit mpmath evaluation of the same formula
    Z, u = bruijn_Z(100, 10)
    assert Z == pytest.approx(3.953458144425441601, rel=1e-12) and u == pytest.approx(2.0)
    Z, u = bruijn_Z(10**6, 100)
    assert Z == pytest.approx(9.136433228987061493, rel=1e-12) and u == pytest.approx(3.0)


def test_bruijn_Z_diagonal():
    Z, u = bruijn_Z(50, 50)
    ly = math.log(50)
    assert u == 1.0
    assert Z == pytest.approx(math.log(1 + 50 / ly) + math.log(1 + ly / 50) * 50 / ly)


@pytest.mark.parametrize("x,y", [(10, 2), (10, 11), (1.5, 1.2)])
def test_bruijn_Z_domain(x, y):
    with pytest.raises(DomainError):
        bruijn_Z(x, y)
