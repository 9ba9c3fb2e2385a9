"""Heights of nonzero rationals and the height-growth constant of a polynomial.

For p/q in lowest terms the minimal polynomial is qX - p, so the naive
height and the absolute Weil height coincide: max(|p|, q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .poly import MPoly


@dataclass(frozen=True)
class HeightValue:
    exact: int
    log_value: float


def _as_fraction(q):
    q = Fraction(q)
    if q == 0:
        raise DomainError("heights are only taken of nonzero numbers")
    return q


def naive_height(q) -> int:
    """max(|numerator|, denominator) of a nonzero rational."""
    q = _as_fraction(q)
    return max(abs(q.numerator), q.denominator)


def weil_height(q) -> HeightValue:
    h = naive_height(q)
    return HeightValue(h, math.log(h))


def height_growth_bound(f: MPoly, H: int) -> int:
    """The integer ``l * prod|a_k| * H**(sum of all term degrees)``, i.e. H**C_f exactly."""
    if f.is_zero():
        raise DomainError("expected a nonzero polynomial")
    bound = len(f.terms)
    for c, exps in f.terms:
        bound *= abs(c) * H ** sum(exps)
    return bound


def height_growth_constant(f: MPoly, H: float) -> float:
    """Exponent C_f with H(f(u)) <= H**C_f whenever every coordinate of u has height <= H.

    C_f = log_H(l * prod_k H(a_k)) + (sum over every term of its total degree),
    l being the number of terms. The second sum runs over all terms, not only
    the leading one, which is why the bound is loose.
    """
    if f.is_zero():
        raise DomainError("expected a nonzero polynomial")
    if H <= 1:
        raise DomainError(f"H must exceed 1, got {H}")
    log_coeffs = math.log(len(f.terms)) + sum(math.log(abs(c)) for c, _ in f.terms)
    return log_coeffs / math.log(H) + sum(sum(exps) for _, exps in f.terms)
