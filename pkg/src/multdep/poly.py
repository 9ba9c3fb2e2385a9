"""Sparse multivariate integer polynomials.

Terms are kept in graded-lex order (x0 > x1 > ...), so two equal polynomials
have identical term tuples and print identically.

Grammar accepted by :func:`parse_poly`::

    expr  := term (("+" | "-") term)*
    term  := unary ("*" unary)*
    unary := ("+" | "-") unary | power
    power := atom ("^" INT)?
    atom  := INT | "x" INT | "(" expr ")"
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import factorize, nth_prime
from .errors import DomainError, PolyParseError


def _grlex_key(exps):
    return (-sum(exps), tuple(-e for e in exps))


@dataclass(frozen=True)
class MPoly:
    num_vars: int
    terms: tuple[tuple[int, tuple[int, ...]], ...]

    @classmethod
    def from_dict(cls, num_vars, coeffs):
        """Build from ``{exponent tuple: coefficient}``; zero coefficients are dropped."""
        if num_vars < 1:
            raise DomainError("a polynomial needs at least one variable")
        terms = []
        for exps, c in coeffs.items():
            exps = tuple(exps)
            if len(exps) != num_vars or any(e < 0 for e in exps):
                raise DomainError(f"bad exponent tuple {exps} for {num_vars} variables")
            if c:
                terms.append((int(c), exps))
        terms.sort(key=lambda t: _grlex_key(t[1]))
        return cls(num_vars, tuple(terms))

    @classmethod
    def constant(cls, num_vars, c):
        return cls.from_dict(num_vars, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars, index):
        exps = [0] * num_vars
        exps[index] = 1
        return cls.from_dict(num_vars, {tuple(exps): 1})

    def as_dict(self):
        return {exps: c for c, exps in self.terms}

    def is_zero(self):
        return not self.terms

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, int):
            return MPoly.constant(self.num_vars, other)
        if isinstance(other, MPoly):
            if other.num_vars != self.num_vars:
                raise DomainError("polynomials live in different numbers of variables")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = self.as_dict()
        for c, exps in other.terms:
            acc[exps] = acc.get(exps, 0) + c
        return MPoly.from_dict(self.num_vars, acc)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.num_vars, tuple((-c, e) for c, e in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = {}
        for c1, e1 in self.terms:
            for c2, e2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return MPoly.from_dict(self.num_vars, acc)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise DomainError("only nonnegative integer powers are supported")
        result = MPoly.constant(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # evaluation ---------------------------------------------------------

    def __call__(self, *u):
        return evaluate(self, u)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for c, exps in self.terms:
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e
            )
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else str(mag))
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces)


@dataclass(frozen=True)
class PolySystem:
    """A tuple F = (f_1, ..., f_n) of polynomials in the same m variables."""

    polys: tuple[MPoly, ...]

    def __post_init__(self):
        if not self.polys:
            raise DomainError("a polynomial system needs at least one component")
        m = self.polys[0].num_vars
        if any(f.num_vars != m for f in self.polys):
            raise DomainError("all components must share the same number of variables")

    @property
    def n(self):
        return len(self.polys)

    @property
    def m(self):
        return self.polys[0].num_vars

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def __len__(self):
        return len(self.polys)


# parsing ----------------------------------------------------------------


class _Parser:
    def __init__(self, text, num_vars):
        self.text = text
        self.m = num_vars
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _int(self):
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise PolyParseError("expected an integer", start)
        return int(self.text[start : self.pos])

    def parse(self):
        result = self.expr()
        if self._peek():
            raise PolyParseError(f"unexpected {self._peek()!r}", self.pos)
        return result

    def expr(self):
        acc = self.term()
        while self._peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self._peek() == "*":
            self.pos += 1
            acc = acc * self.unary()
        return acc

    def unary(self):
        ch = self._peek()
        if ch in ("+", "-"):
            self.pos += 1
            inner = self.unary()
            return -inner if ch == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        if self._peek() == "^":
            self.pos += 1
            base = base ** self._int()
        return base

    def atom(self):
        ch = self._peek()
        start = self.pos
        if ch.isdigit():
            return MPoly.constant(self.m, self._int())
        if ch == "x":
            self.pos += 1
            if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                raise PolyParseError("expected a variable index after 'x'", self.pos)
            index = self._int()
            if index >= self.m:
                raise PolyParseError(
                    f"variable x{index} out of range for {self.m} variable(s)", start
                )
            return MPoly.variable(self.m, index)
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if self._peek() != ")":
                raise PolyParseError("expected ')'", self.pos)
            self.pos += 1
            return inner
        if not ch:
            raise PolyParseError("unexpected end of input", self.pos)
        raise PolyParseError(f"unexpected {ch!r}", start)


def parse_poly(text: str, num_vars: int) -> MPoly:
    """Parse ``text`` into a canonical polynomial in x0..x{num_vars-1}.

    >>> str(parse_poly("x0*(x0 - 1) + 2", 1))
    'x0^2 - x0 + 2'
    """
    if num_vars < 1:
        raise DomainError("num_vars must be >= 1")
    return _Parser(text, num_vars).parse()


# evaluation -------------------------------------------------------------


def evaluate(f: MPoly, u) -> int:
    """Exact value f(u) for an integer point u."""
    if len(u) != f.num_vars:
        raise DomainError(f"point has {len(u)} coordinates, polynomial has {f.num_vars} variables")
    total = 0
    for c, exps in f.terms:
        t = c
        for x, e in zip(u, exps):
            if e:
                t *= x**e
        total += t
    return total


def box_points(m, H):
    """Points of [-H, H]^m in odometer order (last coordinate varies fastest)."""
    return itertools.product(range(-H, H + 1), repeat=m)


def _int64_safe(f, H):
    bound = sum(abs(c) * H ** sum(exps) for c, exps in f.terms)
    # Partial sums stay below the full bound, so one check covers every step.
    return bound < 2**62


def evaluate_box(f: MPoly, H: int) -> list[int]:
    """Values of f at every point of [-H, H]^m, in :func:`box_points` order.

    Uses int64 numpy arithmetic when the coefficient/degree bound proves no
    overflow is possible, exact Python ints otherwise.
    """
    m = f.num_vars
    side = 2 * H + 1
    if _int64_safe(f, H) and side**m <= 50_000_000:
        axis = np.arange(-H, H + 1, dtype=np.int64)
        grids = np.meshgrid(*([axis] * m), indexing="ij")
        total = np.zeros((side,) * m, dtype=np.int64)
        for c, exps in f.terms:
            t = np.full((side,) * m, c, dtype=np.int64)
            for g, e in zip(grids, exps):
                if e:
                    t *= g**e
            total += t
        return total.ravel().tolist()
    return [evaluate(f, u) for u in box_points(m, H)]


# degree structure -------------------------------------------------------


def total_degree(f: MPoly) -> int:
    if f.is_zero():
        raise DomainError("the zero polynomial has no degree")
    return max(sum(exps) for _, exps in f.terms)


def homogeneous_part(f: MPoly, d: int) -> MPoly:
    """Sum of the terms of f of total degree exactly d (possibly zero)."""
    return MPoly(f.num_vars, tuple(t for t in f.terms if sum(t[1]) == d))


def is_homogeneous(f: MPoly) -> bool:
    return len({sum(exps) for _, exps in f.terms}) <= 1


# univariate gcd ---------------------------------------------------------


def _dense(f):
    """Coefficients of a univariate polynomial, highest degree first."""
    if f.num_vars != 1:
        raise DomainError("expected a univariate polynomial")
    if f.is_zero():
        raise DomainError("expected a nonzero polynomial")
    deg = total_degree(f)
    coeffs = [0] * (deg + 1)
    for c, (e,) in f.terms:
        coeffs[deg - e] = c
    return coeffs


def _from_dense(coeffs):
    deg = len(coeffs) - 1
    return MPoly.from_dict(1, {(deg - i,): c for i, c in enumerate(coeffs)})


def _content(coeffs):
    return math.gcd(*coeffs)


def _primitive(coeffs):
    c = _content(coeffs)
    out = [x // c for x in coeffs]
    return [-x for x in out] if out[0] < 0 else out


def _prem(a, b):
    """Pseudo-remainder of dense a by dense b (lc(b)^(deg a - deg b + 1) * a mod b)."""
    r = list(a)
    db = len(b) - 1
    lb = b[0]
    steps = len(a) - len(b) + 1
    for _ in range(steps):
        if len(r) - 1 < db:
            r = [lb * x for x in r]
            continue
        lead = r[0]
        r = [lb * x for x in r]
        for i, bc in enumerate(b):
            r[i] -= lead * bc
        r.pop(0)
    while r and r[0] == 0:
        r.pop(0)
    return r


def univariate_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Gcd in Z[X] by the subresultant remainder sequence.

    The result is primitive-times-content-gcd with positive leading
    coefficient; a constant result certifies that f and g share no complex root.

    >>> str(univariate_gcd(parse_poly("x0^2 - 1", 1), parse_poly("x0 - 1", 1)))
    'x0 - 1'
    """
    a, b = _dense(f), _dense(g)
    if len(a) < len(b):
        a, b = b, a
    d = math.gcd(_content(a), _content(b))
    a, b = _primitive(a), _primitive(b)
    g_, h = 1, 1
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            break
        if len(r) == 1:
            b = [1]
            break
        div = g_ * h**delta
        a, b = b, [x // div for x in r]
        g_ = a[0]
        if delta == 0:
            pass
        elif delta == 1:
            h = g_
        else:
            h = g_**delta // h ** (delta - 1)
    result = [d * x for x in _primitive(b)]
    return _from_dense(result)


def rational_roots(f: MPoly) -> list[Fraction]:
    """All rational roots of a nonzero univariate integer polynomial, ascending."""
    coeffs = _dense(f)
    roots = set()
    while coeffs[-1] == 0:
        roots.add(Fraction(0))
        coeffs.pop()
    if len(coeffs) == 1:
        return sorted(roots)
    lead, const = coeffs[0], coeffs[-1]
    for p in _divisors(const):
        for q in _divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                # Horner with the scaled numerator keeps everything integral.
                acc = 0
                for c in coeffs:
                    acc = acc * cand + c
                if acc == 0:
                    roots.add(cand)
    return sorted(roots)


def _divisors(n):
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def binary_form_has_linear_factor(h: MPoly) -> bool:
    """Whether a homogeneous h(x0, x1) has a factor a*x0 + b*x1 over the rationals."""
    if h.num_vars != 2:
        raise DomainError("binary forms have exactly two variables")
    if h.is_zero():
        raise DomainError("expected a nonzero form")
    if not is_homogeneous(h):
        raise DomainError("expected a homogeneous polynomial")
    d = total_degree(h)
    if d == 0:
        return False
    coeffs = h.as_dict()
    if (d, 0) not in coeffs or (0, d) not in coeffs:
        # x1 | h or x0 | h respectively.
        return True
    dehomog = MPoly.from_dict(1, {(i,): c for (i, _), c in coeffs.items()})
    return bool(rational_roots(dehomog))


# named families ----------------------------------------------------------


def example11_family(n: int) -> PolySystem:
    """(g + p_1, ..., g + p_n) with g = X(X-1)...(X-M), M = p_n, p_i the i-th prime.

    No tuple of values of this system is ever multiplicatively dependent,
    because p_i divides the i-th value and no other.
    """
    if n < 2:
        raise DomainError(f"the family needs n >= 2, got {n}")
    M = nth_prime(n)
    x = MPoly.variable(1, 0)
    g = MPoly.constant(1, 1)
    for j in range(M + 1):
        g = g * (x - j)
    return PolySystem(tuple(g + nth_prime(i) for i in range(1, n + 1)))
