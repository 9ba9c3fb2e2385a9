"""Multiplicative dependence of nonzero rationals.

A nonzero rational is ``sign * prod p**e_p``; the only rational roots of unity
are +1 and -1. So nu_1^k_1 ... nu_n^k_n = 1 holds iff the k-combination of
the prime-exponent vectors vanishes and the signs multiply to +1. Every
question here reduces to exact integer linear algebra on those vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import factorize
from .errors import DomainError
from .lattice import integer_kernel_basis, rational_rank

DEFAULT_SEARCH_BOUND = 20
MAX_RANK_COORDINATES = 20
# Largest coefficient box (2B+1)^r the minimal-relation search will walk.
MAX_RELATION_CANDIDATES = 2_000_000


@dataclass(frozen=True)
class ExponentVector:
    sign: int
    exps: tuple[tuple[int, int], ...]

    def as_dict(self):
        return dict(self.exps)

    @property
    def is_unit(self):
        return not self.exps


@dataclass(frozen=True)
class Relation:
    """Integer exponents k with prod nu_i**k_i == 1.

    ``search_bound`` is the coefficient window that was searched for
    minimality; ``None`` when the relation was not minimized.
    """

    k: tuple[int, ...]
    search_bound: int | None = None

    @property
    def norm(self):
        return max(abs(x) for x in self.k)


@dataclass(frozen=True)
class RankResult:
    rank: int
    witness: tuple[int, ...] | None


def to_rational(q) -> Fraction:
    if isinstance(q, float):
        raise DomainError("floating point inputs are not accepted; use 'p/q' strings")
    try:
        q = Fraction(q)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational number: {q!r}") from exc
    if q == 0:
        raise DomainError("multiplicative dependence needs nonzero coordinates")
    return q


def exponent_vector(q) -> ExponentVector:
    """Sign and prime exponents of a nonzero rational.

    >>> exponent_vector(Fraction(-3, 4))
    ExponentVector(sign=-1, exps=((2, -2), (3, 1)))
    """
    q = to_rational(q)
    exps = dict(factorize(q.numerator).factors)
    for p, e in factorize(q.denominator).factors:
        exps[p] = -e
    return ExponentVector(1 if q > 0 else -1, tuple(sorted(exps.items())))


def exponent_matrix(vectors):
    """Dense rows over the union of primes occurring in ``vectors``."""
    primes = sorted({p for v in vectors for p, _ in v.exps})
    col = {p: j for j, p in enumerate(primes)}
    rows = []
    for v in vectors:
        row = [0] * len(primes)
        for p, e in v.exps:
            row[col[p]] = e
        rows.append(row)
    return primes, rows


def relation_holds(nu, k) -> bool:
    """Check prod nu_i**k_i == 1 by exact rational arithmetic."""
    if len(nu) != len(k):
        raise DomainError("relation length does not match the vector")
    prod = Fraction(1)
    for q, e in zip(nu, k):
        prod *= Fraction(q) ** e
    return prod == 1


def vectors_dependent(vectors) -> bool:
    """Dependence test on exponent vectors (signs are irrelevant: doubling k fixes them)."""
    if any(v.is_unit for v in vectors):
        return True
    active = list(vectors)
    # A vector holding a prime no other active vector has must get exponent 0.
    while active:
        counts = {}
        for v in active:
            for p, _ in v.exps:
                counts[p] = counts.get(p, 0) + 1
        kept = [v for v in active if all(counts[p] > 1 for p, _ in v.exps)]
        if len(kept) == len(active):
            break
        active = kept
    if not active:
        return False
    _, rows = exponent_matrix(active)
    return rational_rank(rows) < len(active)


def _check_vector(nu):
    if not nu:
        raise DomainError("need at least one coordinate")
    return [to_rational(q) for q in nu]


def is_mult_dependent(nu) -> bool:
    """Whether some nonzero integer vector k has prod nu_i**k_i == 1.

    >>> is_mult_dependent([2, 8]), is_mult_dependent([6, 10, 15])
    (True, False)
    """
    nu = _check_vector(nu)
    return vectors_dependent([exponent_vector(q) for q in nu])


def _normalized(v):
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def find_relation(nu, search_bound: int = DEFAULT_SEARCH_BOUND) -> Relation | None:
    """A relation of minimal max-norm, or None if the coordinates are independent.

    The kernel lattice of the exponent matrix is computed exactly and
    LLL-reduced; every integer combination of its basis with coefficients in
    [-search_bound, search_bound] is tried (doubled when the signs would
    multiply to -1). Ties go to the lexicographically smallest vector whose
    first nonzero entry is positive. If the coefficient box would exceed
    MAX_RELATION_CANDIDATES points the bound is shrunk, and the bound actually
    used is recorded on the result.
    """
    nu = _check_vector(nu)
    if search_bound < 1:
        raise DomainError("search_bound must be positive")
    evs = [exponent_vector(q) for q in nu]
    _, rows = exponent_matrix(evs)
    basis = integer_kernel_basis(rows)
    if not basis:
        return None
    r, n = len(basis), len(nu)
    bound = search_bound
    while bound > 1 and (2 * bound + 1) ** r > MAX_RELATION_CANDIDATES:
        bound -= 1

    B = np.array(basis, dtype=object if _too_big(basis, bound) else np.int64)
    negative = np.array([1 if v.sign < 0 else 0 for v in evs], dtype=B.dtype)
    best_norm, best = None, []
    tail_list = list(itertools.product(range(-bound, bound + 1), repeat=r - 1))
    tails = np.array(tail_list, dtype=B.dtype).reshape(len(tail_list), r - 1)
    # Chunk on the first coefficient; c and -c give the same normalized vector,
    # so the first coefficient only needs to run over 0..bound.
    for c0 in range(0, bound + 1):
        coeffs = np.hstack([np.full((len(tails), 1), c0, dtype=B.dtype), tails])
        if c0 == 0:
            coeffs = coeffs[np.any(coeffs != 0, axis=1)]
            if not len(coeffs):
                continue
        cand = coeffs.dot(B)
        odd = (cand.dot(negative) % 2) != 0
        cand[odd] *= 2
        norms = np.abs(cand).max(axis=1)
        m = norms.min()
        if best_norm is None or m < best_norm:
            best_norm, best = m, [cand[i] for i in np.flatnonzero(norms == m)]
        elif m == best_norm:
            best.extend(cand[i] for i in np.flatnonzero(norms == m))
    k = min(_normalized([int(x) for x in v]) for v in best)
    return Relation(k, bound)


def _too_big(basis, bound):
    worst = bound * sum(max(abs(x) for x in v) for v in basis) * 2
    return worst >= 2**62


def mult_rank(nu) -> RankResult:
    """Multiplicative rank with a witness subset (0-based indices).

    Rank 0 when some coordinate is +1 or -1 (witness: that index). Otherwise
    the rank is one less than the size of the smallest dependent subset, which
    is the witness; a fully independent vector has rank n and no witness.

    >>> mult_rank([2, 3, 6])
    RankResult(rank=2, witness=(0, 1, 2))
    """
    nu = _check_vector(nu)
    if len(nu) > MAX_RANK_COORDINATES:
        raise DomainError(
            f"rank computation enumerates subsets; n={len(nu)} exceeds {MAX_RANK_COORDINATES}"
        )
    return rank_of_vectors([exponent_vector(q) for q in nu])


def rank_of_vectors(vectors) -> RankResult:
    n = len(vectors)
    for i, v in enumerate(vectors):
        if v.is_unit:
            return RankResult(0, (i,))
    for size in range(2, n + 1):
        for subset in itertools.combinations(range(n), size):
            if vectors_dependent([vectors[i] for i in subset]):
                return RankResult(size - 1, subset)
    return RankResult(n, None)
