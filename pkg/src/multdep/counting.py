"""Exact counts of multiplicatively dependent polynomial values over integer boxes.

For F = (f_1, ..., f_n) in m variables and the box S = [-H, H]^m:

* ``N_F``     counts tuples (u_1, ..., u_n) in S^n with (f_1(u_1), ..., f_n(u_n))
              multiplicatively dependent;
* ``N_F,s``   splits that count by multiplicative rank s;
* ``N_F*``    counts single points u with (f_1(u), ..., f_n(u)) dependent.

Tuples with a zero coordinate are never dependent; they are tallied separately.

The enumeration runs over *distinct (value, radius)* pairs of each component,
weighted by how many box points produce them, so the result is exactly the
tuple-by-tuple count while each value is factored once. Radii (max |u_i|) are
kept so one pass yields the counts for every H' <= H.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arith import factorize
from .dependence import (
    ExponentVector,
    Relation,
    exponent_vector,
    find_relation,
    vectors_dependent,
)
from .errors import BudgetExceeded, DomainError
from .poly import MPoly, PolySystem, box_points, evaluate, evaluate_box

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class Box:
    m: int
    H: int

    def __post_init__(self):
        if self.m < 1 or self.H < 0:
            raise DomainError(f"bad box: m={self.m}, H={self.H}")

    @property
    def size(self):
        return (2 * self.H + 1) ** self.m

    def points(self):
        return box_points(self.m, self.H)


@dataclass
class RankDecomposition:
    counts: list[int]
    independent_count: int
    zero_coordinate_count: int

    @property
    def dependent_count(self):
        return sum(self.counts)

    @property
    def total(self):
        return self.dependent_count + self.independent_count + self.zero_coordinate_count


@dataclass
class CountProfile:
    """Rank decompositions for every H' = 0..H from one enumeration."""

    n: int
    m: int
    H: int
    by_H: list[RankDecomposition] = field(default_factory=list)

    @property
    def dependent(self):
        return [d.dependent_count for d in self.by_H]


def check_budget(required, budget):
    if budget is not None and required > budget:
        raise BudgetExceeded(required, budget)


# value classification ---------------------------------------------------


@lru_cache(maxsize=1 << 18)
def _value_vector(value):
    return exponent_vector(value)


@lru_cache(maxsize=1 << 18)
def root_key(value):
    """Canonical base r of |value| = r**e with r not a perfect power; () for units.

    Two non-unit integers are multiplicatively dependent iff their keys agree.
    """
    facs = factorize(value).factors
    if not facs:
        return ()
    g = math.gcd(*(e for _, e in facs))
    return tuple((p, e // g) for p, e in facs)


def _rank_of_values(values):
    """Multiplicative rank of nonzero integers (n if independent)."""
    n = len(values)
    if any(v in (1, -1) for v in values):
        return 0
    keys = [root_key(v) for v in values]
    if len(set(keys)) < n:
        return 1
    vecs = [_value_vector(v) for v in values]
    for size in range(3, n + 1):
        for subset in itertools.combinations(vecs, size):
            if vectors_dependent(subset):
                return size - 1
    return n


def _direct_dependent(values):
    return vectors_dependent([_value_vector(v) for v in values])


# component tables -------------------------------------------------------


def _component_table(f: MPoly, H: int):
    """Sorted list of (radius, value, multiplicity) over the box [-H, H]^m."""
    values = evaluate_box(f, H)
    m = f.num_vars
    axis = np.abs(np.arange(-H, H + 1))
    radii = np.zeros((2 * H + 1,) * m, dtype=np.int64)
    for i in range(m):
        shape = [1] * m
        shape[i] = 2 * H + 1
        radii = np.maximum(radii, axis.reshape(shape))
    tally = {}
    for r, v in zip(radii.ravel().tolist(), values):
        tally[(r, v)] = tally.get((r, v), 0) + 1
    return [(r, v, c) for (r, v), c in sorted(tally.items())]


def _empty_buckets(n, H):
    # rows: radius; columns: ranks 0..n-1, independent, zero coordinate
    return np.zeros((H + 1, n + 2), dtype=object)


def _count_pairs(first, second, H, method):
    """Vectorized n = 2 enumeration over the second component."""
    buckets = _empty_buckets(2, H)
    r2 = np.array([r for r, _, _ in second], dtype=np.int64)
    c2 = np.array([c for _, _, c in second], dtype=object)
    v2 = [v for _, v, _ in second]
    zero2 = np.array([v == 0 for v in v2])
    unit2 = np.array([v in (1, -1) for v in v2])
    key_ids = {}
    k2 = np.array(
        [-1 if v == 0 or v in (1, -1) else key_ids.setdefault(root_key(v), len(key_ids)) for v in v2],
        dtype=np.int64,
    )
    vec2 = [None if v == 0 else _value_vector(v) for v in v2]
    for r1, v1, c1 in first:
        radius = np.maximum(r2, r1)
        weight = c2 * c1
        if v1 == 0:
            cls = np.full(len(v2), 3)
        else:
            cls = np.where(zero2, 3, 2)
            if method == "direct":
                ev1 = _value_vector(v1)
                dep = np.array(
                    [vec is not None and vectors_dependent([ev1, vec]) for vec in vec2]
                )
                # A dependent pair containing a unit has rank 0, otherwise rank 1.
                rank = np.where(unit2 | (v1 in (1, -1)), 0, 1)
                cls = np.where(~zero2 & dep, rank, cls)
            elif v1 in (1, -1):
                cls = np.where(zero2, 3, 0)
            else:
                key1 = key_ids.get(root_key(v1), -2)
                cls = np.where(unit2, 0, cls)
                cls = np.where(~zero2 & ~unit2 & (k2 == key1), 1, cls)
        for rad, cl, w in zip(radius.tolist(), cls.tolist(), weight.tolist()):
            buckets[rad, cl] += w
    return buckets


def _count_general(tables, H, method):
    n = len(tables)
    buckets = _empty_buckets(n, H)
    memo = {}
    for combo in itertools.product(*tables):
        radius = max(e[0] for e in combo)
        weight = 1
        for e in combo:
            weight *= e[2]
        values = tuple(e[1] for e in combo)
        if 0 in values:
            buckets[radius, n + 1] += weight
            continue
        key = tuple(sorted(values))
        cls = memo.get(key)
        if cls is None:
            if method == "direct":
                if not _direct_dependent(values):
                    cls = n
                else:
                    rank = _rank_of_values(values)
                    cls = rank if rank < n else -1
            else:
                cls = _rank_of_values(values)
            memo[key] = cls
        if cls < 0:
            raise AssertionError(f"dependence tests disagree on {values}")
        buckets[radius, cls] += weight
    return buckets


def _count_shard(args):
    tables, H, method = args
    if len(tables) == 2:
        return _count_pairs(tables[0], tables[1], H, method)
    return _count_general(tables, H, method)


def count_profile(
    F: PolySystem,
    H: int,
    *,
    method: str = "rank",
    threads: int = 1,
    budget: int | None = DEFAULT_BUDGET,
) -> CountProfile:
    """Rank-decomposed counts for every H' in 0..H.

    ``method="rank"`` classifies each value tuple by its multiplicative rank
    directly. ``method="direct"`` first runs the whole-vector dependence test
    and only then computes a rank, so N_F comes from a different code path
    than the rank buckets; any disagreement raises AssertionError.
    """
    if method not in ("rank", "direct"):
        raise DomainError(f"unknown counting method {method!r}")
    if H < 0:
        raise DomainError("H must be nonnegative")
    n, m = F.n, F.m
    check_budget((2 * H + 1) ** (m * n), budget)
    cache = {}
    tables = []
    for f in F:
        if f not in cache:
            cache[f] = _component_table(f, H)
        tables.append(cache[f])

    if n == 1:
        buckets = _empty_buckets(1, H)
        for r, v, c in tables[0]:
            if v == 0:
                buckets[r, 2] += c
            else:
                buckets[r, 0 if v in (1, -1) else 1] += c
    else:
        threads = max(1, int(threads))
        first = tables[0]
        shards = [first[i::threads] for i in range(threads)] if threads > 1 else [first]
        jobs = [([shard] + tables[1:], H, method) for shard in shards if shard]
        if threads > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(_count_shard, jobs))
        else:
            parts = [_count_shard(job) for job in jobs]
        buckets = _empty_buckets(n, H)
        for part in parts:
            buckets = buckets + part

    cumulative = np.cumsum(buckets, axis=0)
    profile = CountProfile(n, m, H)
    for h in range(H + 1):
        row = [int(x) for x in cumulative[h]]
        profile.by_H.append(RankDecomposition(row[:n], row[n], row[n + 1]))
    return profile


def count_NF_by_rank(F: PolySystem, H: int, **kwargs) -> RankDecomposition:
    return count_profile(F, H, **kwargs).by_H[H]


def count_NF(F: PolySystem, H: int, **kwargs) -> int:
    """N_F([-H, H]^m): the number of n-tuples of box points with dependent values."""
    return count_NF_by_rank(F, H, **kwargs).dependent_count


# single shared point ----------------------------------------------------


@dataclass
class StarWitness:
    point: tuple[int, ...]
    values: tuple[int, ...]
    relation: Relation


@dataclass
class StarCount:
    count: int
    witnesses: list[StarWitness]
    zero_coordinate_count: int


def count_NF_star(
    F: PolySystem,
    H: int,
    *,
    budget: int | None = DEFAULT_BUDGET,
    search_bound: int = 20,
) -> StarCount:
    """N_F*([-H, H]^m) with every dependent point and its minimal relation."""
    check_budget((2 * H + 1) ** F.m, budget)
    witnesses, zeros = [], 0
    columns = [evaluate_box(f, H) for f in F]
    for u, values in zip(box_points(F.m, H), zip(*columns)):
        if 0 in values:
            zeros += 1
            continue
        if _direct_dependent(values):
            witnesses.append(StarWitness(u, values, find_relation(values, search_bound)))
    return StarCount(len(witnesses), witnesses, zeros)


def dependent_value_tuples(F: PolySystem, H: int, *, budget=DEFAULT_BUDGET):
    """Distinct dependent value tuples (f_1(u_1), ..., f_n(u_n)) over the box, sorted."""
    check_budget((2 * H + 1) ** (F.m * F.n), budget)
    distinct = [sorted({v for _, v, _ in _component_table(f, H)}) for f in F]
    out = []
    for values in itertools.product(*distinct):
        if 0 not in values and _direct_dependent(values):
            out.append(values)
    return out


def value_vector(value: int) -> ExponentVector:
    return _value_vector(value)


def point_values(F: PolySystem, u) -> tuple[int, ...]:
    return tuple(evaluate(f, u) for f in F)
