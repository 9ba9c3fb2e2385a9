import pytest

from multdep.counting import (
    Box,
    count_NF,
    count_NF_by_rank,
    count_NF_star,
    count_profile,
    root_key,
)
from multdep.errors import BudgetExceeded, DomainError
from multdep.poly import example11_family
from oracles import brute_NF, brute_relation_exists


def test_box():
    box = Box(2, 3)
    pts = list(box.points())
    assert len(pts) == box.size == 49
    assert len(set(pts)) == 49 and max(max(map(abs, p)) for p in pts) == 3
    with pytest.raises(DomainError):
        Box(0, 1)


def test_root_key():
    assert root_key(8) == root_key(-2) == root_key(2) == ((2, 1),)
    assert root_key(36) == root_key(6) == ((2, 1), (3, 1))
    assert root_key(12) == ((2, 2), (3, 1))
    assert root_key(1) == ()


def test_identity_pair(make_system):
    F = make_system("x0", "x0")
    assert count_NF(F, 2) == 16
    dec = count_NF_by_rank(F, 2)
    assert dec.counts == [12, 4]
    assert dec.independent_count == 0 and dec.zero_coordinate_count == 9
    assert dec.total == 25
    assert count_NF(F, 0) == 0


def test_single_component(make_system):
    dec = count_NF_by_rank(make_system("x0"), 3)
    assert dec.counts == [2]
    assert dec.independent_count == 4 and dec.zero_coordinate_count == 1


def test_example11_is_never_dependent():
    assert count_NF(example11_family(2), 20) == 0
    assert count_NF_by_rank(example11_family(2), 10).counts == [0, 0]


@pytest.mark.parametrize("texts,m,H", [
    (("x0", "x0", "x0"), 1, 4),
    (("x0", "2*x0"), 1, 8),
    (("x0^2 + x0 + 1", "x0^2 + x0 + 1"), 1, 5),
    (("x0 - 3", "x0^2"), 1, 6),
    (("x0*x1", "x0 + x1"), 2, 2),
])
def test_counts_match_brute_force(make_system, texts, m, H):
    F = make_system(*texts, m=m)
    funcs = [lambda *u, f=f: f(*u) for f in F]
    expected = brute_NF(funcs, m, H, bound=8)
    assert count_NF(F, H) == expected
    assert count_NF(F, H, method="direct") == expected


def test_profile_matches_separate_runs(make_system):
    F = make_system("x0", "x0 + 1", "x0^2")
    prof = count_profile(F, 6)
    for h in range(7):
        assert prof.by_H[h] == count_NF_by_rank(F, h)
    assert prof.dependent == sorted(prof.dependent)


@pytest.mark.parametrize("threads", [2, 3])
def test_threads_do_not_change_counts(make_system, threads):
    for F, H in ((make_system("x0", "x0"), 60), (make_system("x0", "x0 - 1", "x0^2"), 8)):
        assert count_profile(F, H, threads=threads).by_H == count_profile(F, H).by_H


def test_permuting_components(make_system):
    a = count_NF_by_rank(make_system("x0", "x0^2 - 2", "x0 + 3"), 6)
    b = count_NF_by_rank(make_system("x0 + 3", "x0", "x0^2 - 2"), 6)
    assert a == b


def test_budget_refusal(make_system):
    with pytest.raises(BudgetExceeded) as err:
        count_NF(make_system("x0", "x0"), 10, budget=100)
    assert err.value.required == 21**2
    with pytest.raises(BudgetExceeded):
        count_NF_star(make_system("x0*x1", "x1", m=2), 10, budget=100)


def test_unknown_method(make_system):
    with pytest.raises(DomainError):
        count_NF(make_system("x0", "x0"), 2, method="guess")


def test_star_counts(make_system):
    # (u, u^2) is dependent for every u != 0
    for H in (1, 4, 9):
        assert count_NF_star(make_system("x0", "x0^2"), H).count == 2 * H
    star = count_NF_star(make_system("x0 + 1", "x0 + 2"), 5)
    brute = sum(
        1 for u in range(-5, 6) if 0 not in (u + 1, u + 2) and brute_relation_exists([u + 1, u + 2])
    )
    assert star.count == brute == 2
    assert [w.point for w in star.witnesses] == [(-3,), (0,)]
    assert star.witnesses[1].relation.k == (1, 0)
    assert star.zero_coordinate_count == 2
    assert count_NF_star(example11_family(2), 50).count == 0


def test_example12_lower_bound(make_system):
    # shared first two components force dependence on the diagonal
    F = make_system("x0^2 - 2", "x0^2 - 2", "x0 + 5")
    for H in (1, 2, 3):
        assert count_NF(F, H) >= (2 * H + 1) ** 2


def test_monotone_in_H(make_system):
    for F in (make_system("x0", "3*x0 + 1"), make_system("x0^2 - 1", "x0", "x0 + 2")):
        counts = count_profile(F, 7).dependent
        assert counts == sorted(counts)
        stars = [count_NF_star(F, h).count for h in range(8)]
        assert stars == sorted(stars)


def test_decomposition_reconciles(make_system):
    for F, H in ((make_system("x0", "x0", "x0"), 10), (make_system("x0*x1", "x0 - x1", m=2), 3)):
        dec = count_NF_by_rank(F, H)
        assert dec.total == (2 * H + 1) ** (F.m * F.n)
        assert count_NF(F, H, method="direct") == sum(dec.counts)
