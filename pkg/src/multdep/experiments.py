"""Empirical probes built on the box counters: gcd value sets, largest prime
factor profiles, hypersurface point counts, log-log scaling fits and the
closed-form checks for the diagonal family F = (x, ..., x).
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field

import numpy as np

from .arith import largest_prime_factor
from .counting import (
    DEFAULT_BUDGET,
    check_budget,
    count_NF,
    count_NF_star,
    dependent_value_tuples,
)
from .dependence import find_relation
from .errors import DomainError
from .heights import height_growth_constant
from .poly import (
    MPoly,
    PolySystem,
    box_points,
    evaluate_box,
    total_degree,
    univariate_gcd,
)

# -- dimension-growth exponents (rational boxes, so D = 1) ------------------


def v_exponent(m: int, d: int) -> float:
    """The saving v(m, d): 1 for m = 1; for m > 1, 2 when d >= 4 and 3 - 2/sqrt(3) when d = 3."""
    if m < 1:
        raise DomainError("m must be positive")
    if m == 1:
        return 1.0
    if d >= 4:
        return 2.0
    if d == 3:
        return 3 - 2 / math.sqrt(3)
    raise DomainError(f"v(m, d) is only defined for d >= 3 when m > 1 (got m={m}, d={d})")


def nf_exponent(m, n, d):
    """Exponent of H in the N_F upper bound: mn - v(m, d)."""
    return m * n - v_exponent(m, d)


def nf_rank_exponent(m, n, d, s):
    """Exponent of H in the rank-s bound: mn - ceil((s + 1) / 2) * v(m, d)."""
    return m * n - math.ceil((s + 1) / 2) * v_exponent(m, d)


def hypersurface_exponent(m, d):
    return m - v_exponent(m, d)


# -- gcd values ---------------------------------------------------------------


@dataclass
class GcdValueSet:
    values: list[int]
    vanishing_points: list[tuple[int, ...]]
    # For univariate systems: whether every pair of components has a constant gcd.
    pairwise_coprime: bool | None = None


def pairwise_no_common_zero(F: PolySystem) -> bool | None:
    """Exact check that no two components share a complex zero; None when m > 1."""
    if F.m != 1:
        return None
    polys = list(F)
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            f, g = polys[i], polys[j]
            if f.is_zero() or g.is_zero():
                return False
            if total_degree(univariate_gcd(f, g)) > 0:
                return False
    return True


def gcd_value_set(F: PolySystem, H: int, *, budget=DEFAULT_BUDGET) -> GcdValueSet:
    """Sorted set of gcd(f_1(u), ..., f_n(u)) over the box; common zeros listed apart."""
    check_budget((2 * H + 1) ** F.m, budget)
    columns = [evaluate_box(f, H) for f in F]
    seen, vanishing = set(), []
    for u, values in zip(box_points(F.m, H), zip(*columns)):
        g = math.gcd(*values)
        if g == 0:
            vanishing.append(u)
        else:
            seen.add(g)
    return GcdValueSet(sorted(seen), vanishing, pairwise_no_common_zero(F))


# -- largest prime factor along shells ----------------------------------------


@dataclass
class PPlusProfile:
    shells: list[tuple[int, int | None]]
    # Points where |f(u)| <= 1, so P+ is undefined.
    skipped: list[tuple[int, ...]] = field(default_factory=list)


def pplus_profile(f: MPoly, H: int, *, budget=DEFAULT_BUDGET) -> PPlusProfile:
    """For each shell max|u_i| = t (t = 0..H), the least P+(f(u)) over that shell."""
    if f.is_zero() or total_degree(f) == 0:
        raise DomainError("P+ profile needs a nonconstant polynomial")
    check_budget((2 * H + 1) ** f.num_vars, budget)
    best: dict[int, int] = {}
    skipped = []
    for u, value in zip(box_points(f.num_vars, H), evaluate_box(f, H)):
        t = max((abs(x) for x in u), default=0)
        if abs(value) <= 1:
            skipped.append(u)
            continue
        p = largest_prime_factor(value)
        if t not in best or p < best[t]:
            best[t] = p
    return PPlusProfile([(t, best.get(t)) for t in range(H + 1)], skipped)


def unit_value_points(f: MPoly, H: int, *, budget=DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """Box points where f takes the value 1 or -1."""
    check_budget((2 * H + 1) ** f.num_vars, budget)
    return [u for u, v in zip(box_points(f.num_vars, H), evaluate_box(f, H)) if v in (1, -1)]


@dataclass
class FinitenessProbe:
    """What can be checked of the finiteness hypotheses on a box."""

    pairwise_no_common_zero: bool | None
    unit_solutions: list[list[tuple[int, ...]]]
    pplus_minima: list[list[tuple[int, int | None]]]
    gcd_values: list[int]
    assertions: dict


def finiteness_probe(F: PolySystem, H: int, assertions=None, *, budget=DEFAULT_BUDGET):
    return FinitenessProbe(
        pairwise_no_common_zero(F),
        [unit_value_points(f, H, budget=budget) for f in F],
        [
            pplus_profile(f, H, budget=budget).shells if total_degree(f) > 0 else []
            for f in F
        ],
        gcd_value_set(F, H, budget=budget).values,
        dict(assertions or {}),
    )


# -- hypersurfaces ------------------------------------------------------------


def _grid_values(f, fixed, H):
    """Values of f with x0 = fixed over [-H, H]^(m-1), as an int64 or object array."""
    m = f.num_vars
    side = 2 * H + 1
    bound = sum(abs(c) * H ** sum(e) for c, e in f.terms)
    dtype = np.int64 if bound < 2**62 else object
    axis = np.arange(-H, H + 1).astype(dtype)
    grids = np.meshgrid(*([axis] * (m - 1)), indexing="ij") if m > 1 else []
    shape = (side,) * (m - 1)
    total = np.zeros(shape, dtype=dtype)
    for c, exps in f.terms:
        t = np.full(shape, c * fixed ** exps[0], dtype=dtype)
        for g, e in zip(grids, exps[1:]):
            if e:
                t = t * g**e
        total = total + t
    return total


def hypersurface_count(f: MPoly, target: int, H: int, *, budget=DEFAULT_BUDGET) -> int:
    """|{u in [-H, H]^m : f(u) = target}| by exhaustive evaluation."""
    check_budget((2 * H + 1) ** f.num_vars, budget)
    return int(sum(int(np.count_nonzero(_grid_values(f, a, H) == target)) for a in range(-H, H + 1)))


# -- scaling ------------------------------------------------------------------


@dataclass
class ScalingReport:
    H_values: list[int]
    counts: list[int]
    slope: float
    intercept: float
    target_exponent: float | None
    deviation: float | None
    residuals: list[float]


def scaling_fit(counts, target_exponent=None, *, min_H=10) -> ScalingReport:
    """Least-squares slope of log(count) against log(H).

    Only pairs with H >= min_H and a positive count are used; at least three
    are required.
    """
    usable = [(int(h), int(c)) for h, c in counts if h >= min_H and c > 0]
    if len(usable) < 3:
        raise DomainError(f"need at least 3 usable (H, count) pairs, got {len(usable)}")
    x = np.log([h for h, _ in usable])
    y = np.log([c for _, c in usable])
    slope, intercept = np.polyfit(x, y, 1)
    residuals = (y - (slope * x + intercept)).tolist()
    deviation = None if target_exponent is None else float(slope - target_exponent)
    return ScalingReport(
        [h for h, _ in usable],
        [c for _, c in usable],
        float(slope),
        float(intercept),
        target_exponent,
        deviation,
        residuals,
    )


def envelope_constant(count, m, n, H):
    """count / (|S|^(mn-1) (log H)^(n^2-1)) with |S| = 2H + 1, the polylog envelope constant."""
    if H < 2:
        raise DomainError("the envelope needs H >= 2")
    return count / ((2 * H + 1) ** (m * n - 1) * math.log(H) ** (n * n - 1))


# -- the diagonal family --------------------------------------------------------


def diagonal_family(n):
    x = MPoly.variable(1, 0)
    return PolySystem((x,) * n)


def example13_main_term(n, H):
    return n * (n + 1) * (2 * H) ** (n - 1)


def example13_ratio(n: int, H: int, **kwargs) -> float:
    """N_F([-H, H]) / (n(n+1)(2H)^(n-1)) for F = (x, ..., x)."""
    if n < 2 or H < 1:
        raise DomainError("need n >= 2 and H >= 1")
    return count_NF(diagonal_family(n), H, **kwargs) / example13_main_term(n, H)


# -- relation sizes ---------------------------------------------------------------


@dataclass
class RelationProfile:
    H: int
    dependent_count: int
    max_norm: int | None
    median_norm: float | None
    growth_constant: float
    fitted_A: float | None
    search_bound: int


def relation_size_profile(
    F: PolySystem, H: int, *, mode="star", search_bound=20, budget=DEFAULT_BUDGET
) -> RelationProfile:
    """Max-norm statistics of minimal relations found on the box.

    ``mode="star"`` takes the witnesses of N_F* (one shared point u);
    ``mode="tuples"`` takes every distinct dependent value tuple behind N_F.
    ``fitted_A`` is max |k|_inf / (C log H)^(n-1), with C the largest growth
    constant among the components, so values have height <= H^C.
    """
    if H < 2:
        raise DomainError("relation profile needs H >= 2")
    if mode == "star":
        star = count_NF_star(F, H, budget=budget, search_bound=search_bound)
        norms = [w.relation.norm for w in star.witnesses]
    elif mode == "tuples":
        norms = [
            find_relation(values, search_bound).norm
            for values in dependent_value_tuples(F, H, budget=budget)
        ]
    else:
        raise DomainError(f"unknown relation profile mode {mode!r}")
    C = max(height_growth_constant(f, H) for f in F if not f.is_zero())
    if not norms:
        return RelationProfile(H, 0, None, None, C, None, search_bound)
    top = max(norms)
    return RelationProfile(
        H,
        len(norms),
        top,
        float(statistics.median(norms)),
        C,
        top / (C * math.log(H)) ** (F.n - 1),
        search_bound,
    )
