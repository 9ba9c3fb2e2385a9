import itertools
import math
import random
from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form
from hypothesis import given, settings
from hypothesis import strategies as st

from multdep.dependence import (
    exponent_vector,
    find_relation,
    is_mult_dependent,
    mult_rank,
    relation_holds,
)
from multdep.errors import DomainError
from multdep.lattice import integer_kernel_basis, lll_reduce, rational_rank
from oracles import brute_min_relation_norm, brute_relation_exists

small_rational = st.builds(
    Fraction, st.integers(-50, 50).filter(bool), st.integers(1, 50)
)


def test_exponent_vectors():
    ev = exponent_vector(12)
    assert (ev.sign, ev.as_dict()) == (1, {2: 2, 3: 1})
    ev = exponent_vector(Fraction(-3, 4))
    assert (ev.sign, ev.as_dict()) == (-1, {2: -2, 3: 1})
    ev = exponent_vector(1)
    assert (ev.sign, ev.exps) == (1, ())
    with pytest.raises(DomainError):
        exponent_vector(0)
    with pytest.raises(DomainError):
        exponent_vector(0.5)


@pytest.mark.parametrize("nu,expected", [
    ([2, 3], False),
    ([2, 8], True),
    ([-1, 5], True),
    ([6, 10, 15], False),
    ([Fraction(1, 2), 2], True),
    ([-2], False),
    ([-1], True),
])
def test_is_mult_dependent(nu, expected):
    assert is_mult_dependent(nu) is expected


def test_is_mult_dependent_input_errors():
    with pytest.raises(DomainError):
        is_mult_dependent([])
    with pytest.raises(DomainError):
        is_mult_dependent([2, 0])


def test_kernel_examples():
    assert integer_kernel_basis([[1, 0], [0, 1]]) == []
    assert integer_kernel_basis([[1], [1]]) == [[1, -1]]
    basis = integer_kernel_basis([[3, 0], [2, 1], [1, 2]])
    assert basis == [[1, -2, 1]]
    assert relation_holds([8, 12, 18], basis[0])
    with pytest.raises(DomainError):
        integer_kernel_basis([[1, 2], [3]])


def test_kernel_is_the_full_lattice():
    rows = [[2, 0], [0, 2], [1, 1]]
    basis = integer_kernel_basis(rows)
    assert basis == [[1, 1, -2]]
    rows = [[2], [4], [6]]
    basis = integer_kernel_basis(rows)
    # {k : a + 2b + 3c = 0} has squared covolume |(1, 2, 3)|^2; a proper
    # sublattice would have a multiple of it.
    M = sympy.Matrix(basis)
    assert (M * M.T).det() == 14


@settings(max_examples=200)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=5))
def test_kernel_against_sympy(rows):
    basis = integer_kernel_basis(rows)
    n = len(rows)
    M = sympy.Matrix(rows)
    assert len(basis) == n - M.rank()
    for v in basis:
        assert all(sum(v[i] * rows[i][j] for i in range(n)) == 0 for j in range(3))
        assert math.gcd(*v) == 1
    if basis:
        # unit Smith invariants: the basis spans a saturated lattice, hence all of the kernel
        B = sympy.Matrix(basis)
        snf = smith_normal_form(B, domain=sympy.ZZ)
        assert all(abs(snf[i, i]) == 1 for i in range(len(basis)))


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_against_sympy(rows):
    assert rational_rank(rows) == sympy.Matrix(rows).rank()


def test_lll_keeps_lattice():
    basis = [[1, 0, 0, 1345], [0, 1, 0, 35], [0, 0, 1, 154]]
    red = lll_reduce(basis)
    assert sympy.Matrix(red).rank() == 3
    gram = lambda b: (sympy.Matrix(b) * sympy.Matrix(b).T).det()
    assert gram(red) == gram(basis)


@pytest.mark.parametrize("nu,k", [
    ([2, 4], (2, -1)),
    ([2, -2], (2, -2)),
    ([8, 12, 18], (1, -2, 1)),
    ([2, 8], (3, -1)),
    ([-1, 5], (2, 0)),
    ([1, 7], (1, 0)),
])
def test_find_relation_examples(nu, k):
    rel = find_relation(nu)
    assert rel.k == k
    assert relation_holds(nu, rel.k)
    assert rel.search_bound == 20


def test_find_relation_independent():
    assert find_relation([2, 3]) is None
    assert find_relation([6, 10, 15]) is None


def test_find_relation_needs_large_exponent():
    # 32/27, 36 and 3 are dependent only through (2, -5, 16)
    nu = [Fraction(32, 27), 36, 3]
    rel = find_relation(nu)
    assert rel.k == (2, -5, 16)
    assert brute_relation_exists(nu, 12) is False
    assert brute_relation_exists(nu, 16) is True


@settings(max_examples=150, deadline=None)
@given(st.lists(small_rational, min_size=1, max_size=3))
def test_relation_is_sound_and_minimal(nu):
    rel = find_relation(nu)
    assert (rel is not None) == is_mult_dependent(nu)
    if rel is None:
        return
    assert any(rel.k) and relation_holds(nu, rel.k)
    first = next(x for x in rel.k if x)
    assert first > 0
    brute = brute_min_relation_norm(nu, bound=rel.norm)
    assert brute == rel.norm


def test_find_relation_tie_break_is_lexicographic():
    # both (1, -1, 0) and (0, 1, -1) have norm 1
    rel = find_relation([2, 2, 2])
    assert rel.k == (0, 1, -1)


@pytest.mark.parametrize("nu,rank,witness", [
    ([1, 7], 0, (0,)),
    ([2, 4, 5], 1, (0, 1)),
    ([2, 3, 6], 2, (0, 1, 2)),
    ([2, 3, 5], 3, None),
    ([7, -1, 3], 0, (1,)),
])
def test_mult_rank_examples(nu, rank, witness):
    res = mult_rank(nu)
    assert (res.rank, res.witness) == (rank, witness)


def test_mult_rank_guard():
    with pytest.raises(DomainError):
        mult_rank(list(range(2, 23)))


def _brute_rank(nu):
    if any(abs(q) == 1 for q in nu):
        return 0
    n = len(nu)
    for size in range(2, n + 1):
        for sub in itertools.combinations(nu, size):
            if brute_relation_exists(list(sub), 12):
                return size - 1
    return n


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 6, 8, 9, 12, -2, -1, Fraction(1, 3), Fraction(2, 3), 5, 10]),
                min_size=1, max_size=4))
def test_mult_rank_against_brute_force(nu):
    res = mult_rank(nu)
    assert res.rank == _brute_rank(nu)
    n = len(nu)
    if res.rank == 0:
        assert abs(nu[res.witness[0]]) == 1
    elif res.rank < n:
        assert len(res.witness) == res.rank + 1
        assert is_mult_dependent([nu[i] for i in res.witness])
        for sub in itertools.combinations(nu, res.rank):
            assert not is_mult_dependent(list(sub))
    else:
        assert not is_mult_dependent(nu)
    if is_mult_dependent(nu):
        assert res.rank <= n - 1


@settings(max_examples=100, deadline=None)
@given(st.lists(small_rational, min_size=1, max_size=4), small_rational)
def test_appending_never_grows_smallest_dependent_subset(nu, extra):
    def size(r, n):
        return 1 if r.rank == 0 else (r.rank + 1 if r.rank < n else math.inf)

    before = size(mult_rank(nu), len(nu))
    after = size(mult_rank(nu + [extra]), len(nu) + 1)
    assert after <= before


@settings(max_examples=100, deadline=None)
@given(st.lists(small_rational, min_size=1, max_size=4), st.randoms())
def test_dependence_invariant_under_permutation_and_inversion(nu, rnd):
    base = is_mult_dependent(nu)
    perm = list(nu)
    rnd.shuffle(perm)
    assert is_mult_dependent(perm) == base
    i = rnd.randrange(len(nu))
    inv = list(nu)
    inv[i] = 1 / inv[i]
    assert is_mult_dependent(inv) == base


def test_random_agreement_with_exhaustive_search():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 4)
        nu = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50)) for _ in range(n)]
        assert is_mult_dependent(nu) == brute_relation_exists(nu)
