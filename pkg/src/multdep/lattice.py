"""Exact integer linear algebra: rank, left-kernel lattices and LLL reduction."""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError


def _check_rect(rows):
    rows = [list(map(int, r)) for r in rows]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DomainError("ragged matrix")
    return rows


def rational_rank(rows) -> int:
    """Rank over Q of an integer matrix, by fraction-free (Bareiss) elimination."""
    a = _check_rect(rows)
    if not a or not a[0]:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, nrows):
            ai = a[i]
            f = ai[col]
            ar = a[rank]
            for j in range(col, ncols):
                ai[j] = (p * ai[j] - f * ar[j]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _normalize_sign(v):
    for x in v:
        if x:
            return v if x > 0 else [-y for y in v]
    return v


def lll_reduce(basis, delta=Fraction(3, 4)):
    """LLL-reduce a list of linearly independent integer vectors (exact arithmetic)."""
    b = [list(v) for v in basis]
    k = len(b)
    if k <= 1:
        return b

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gram_schmidt():
        bstar, mu = [], [[Fraction(0)] * k for _ in range(k)]
        norms = []
        for i in range(k):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = dot(b[i], bstar[j]) / norms[j]
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(dot(v, v))
        return mu, norms

    mu, norms = gram_schmidt()
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                b[i] = [x - q * y for x, y in zip(b[i], b[j])]
                mu, norms = gram_schmidt()
        if norms[i] >= (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            i += 1
        else:
            b[i], b[i - 1] = b[i - 1], b[i]
            mu, norms = gram_schmidt()
            i = max(i - 1, 1)
    return b


def integer_kernel_basis(rows, reduce=True) -> list[list[int]]:
    """Basis of the lattice {k in Z^n : sum_i k_i * rows[i] = 0}.

    Unimodular row reduction of ``[rows | I]`` to echelon form; the identity
    block of every row whose left block vanishes is a kernel vector, and
    together they generate the whole kernel lattice (not just a finite-index
    sublattice). With ``reduce`` the basis is LLL-reduced; every vector is
    primitive and normalized so its first nonzero entry is positive.
    """
    a = _check_rect(rows)
    n = len(a)
    if n == 0:
        return []
    ncols = len(a[0])
    aug = [a[i] + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    top = 0
    for col in range(ncols):
        # Euclid on the column, applied to whole rows (unimodular).
        while True:
            nz = [i for i in range(top, n) if aug[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(aug[i][col]))
            aug[top], aug[piv] = aug[piv], aug[top]
            done = True
            for i in range(top + 1, n):
                if aug[i][col]:
                    q = aug[i][col] // aug[top][col]
                    aug[i] = [x - q * y for x, y in zip(aug[i], aug[top])]
                    if aug[i][col]:
                        done = False
            if done:
                top += 1
                break
        if top == n:
            break
    kernel = [row[ncols:] for row in aug[top:]]
    if reduce and len(kernel) > 1:
        kernel = lll_reduce(kernel)
    return [_normalize_sign(v) for v in kernel]
