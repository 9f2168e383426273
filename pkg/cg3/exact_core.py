# cg3/exact_core.py
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, wraps
from math import comb, factorial as _factorial, prod
from typing import Iterator, Mapping, Sequence, Union

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement, PolyRing, ring

from .errors import NotInSpan, RankDeficient
from .util import factorial_cache_size

Rational = Fraction
SparsePolynomial = PolyElement
Composition = tuple  # tuple[int, ...] summing to a fixed total

Number = Union[int, Fraction]


# ───────────────────────────── factorials ─────────────────────────────

def _factorial_cached(fn):
    """lru_cache sized by CG3_FACTORIAL_CACHE, built on the first call."""
    cached = None

    @wraps(fn)
    def call(n: int):
        nonlocal cached
        if cached is None:
            cached = lru_cache(maxsize=factorial_cache_size())(fn)
        return cached(n)
    return call


@_factorial_cached
def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return _factorial(n)


@_factorial_cached
def reciprocal_gamma_int(n: int) -> Fraction:
    """1/Γ(n): 1/(n-1)! for n >= 1, zero at the poles n <= 0."""
    if n <= 0:
        return Fraction(0)
    return Fraction(1, factorial(n - 1))


def inv_factorial(n: int) -> Fraction:
    return reciprocal_gamma_int(n + 1)


def falling(x: int, n: int) -> int:
    """x(x-1)...(x-n+1); the empty product for n = 0."""
    if n < 0:
        raise ValueError("falling factorial length must be nonnegative")
    return prod(x - i for i in range(n))


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


# ───────────────────────────── sympy bridge ─────────────────────────────

def to_qq(x: Number):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def from_qq(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


@lru_cache(maxsize=None)
def poly_ring(names: tuple) -> PolyRing:
    if not names:
        raise ValueError("a polynomial ring needs at least one variable")
    return ring(",".join(names), QQ)[0]


def var_names(p: PolyElement) -> tuple:
    return tuple(str(s) for s in p.ring.symbols)


def poly_from_terms(names: Sequence[str], terms: Mapping[tuple, Number]) -> PolyElement:
    R = poly_ring(tuple(names))
    return R.from_dict({tuple(m): to_qq(c) for m, c in terms.items() if c})


def poly_terms(p: PolyElement) -> dict:
    """Exponent vector -> Fraction, zero terms never present."""
    return {m: from_qq(c) for m, c in p.terms()}


def _common(lhs: PolyElement, rhs: PolyElement):
    if lhs.ring == rhs.ring:
        return lhs, rhs
    names = list(var_names(lhs))
    names += [n for n in var_names(rhs) if n not in names]
    R = poly_ring(tuple(names))
    return lhs.set_ring(R), rhs.set_ring(R)


def poly_arith(lhs: PolyElement, rhs: PolyElement, op: str) -> PolyElement:
    lhs, rhs = _common(lhs, rhs)
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown polynomial operation {op!r}")


def partial_derivative(p: PolyElement, var: str) -> PolyElement:
    names = var_names(p)
    if var not in names:
        return p.ring.zero
    return p.diff(p.ring.gens[names.index(var)])


def substitute(p: PolyElement, assignments: Mapping[str, Number]) -> Fraction:
    """Evaluates p at a rational point; every variable of p must be assigned."""
    names = var_names(p)
    missing = [n for n in names if n not in assignments]
    if missing:
        raise ValueError(f"no value for {', '.join(missing)}")
    if not p:
        return Fraction(0)
    point = [(g, to_qq(assignments[n])) for g, n in zip(p.ring.gens, names)]
    return from_qq(p.evaluate(point))


# ───────────────────────────── compositions ─────────────────────────────

def iter_compositions(total: int, parts: int) -> Iterator[tuple]:
    if parts <= 0:
        raise ValueError("parts must be positive")
    if total < 0:
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in iter_compositions(total - head, parts - 1):
            yield (head, *tail)


@lru_cache(maxsize=4096)
def enumerate_compositions(total: int, parts: int) -> tuple:
    """All `parts`-tuples of nonnegative integers summing to `total`, lexicographic."""
    return tuple(iter_compositions(total, parts))


# ───────────────────────────── exact linear solve ─────────────────────────────

def solve_linear_combination(target: PolyElement, basis: Sequence[PolyElement]) -> list:
    """Coefficients c with target == Σ c_i basis_i, by rref over QQ.

    Raises NotInSpan when target is outside the span and RankDeficient when
    the basis is linearly dependent.
    """
    return solve_with_rank(target, basis)[0]


def solve_with_rank(target: PolyElement, basis: Sequence[PolyElement]) -> tuple:
    """(coefficients, rank of the basis) from a single row reduction."""
    n = len(basis)
    if n == 0:
        if target:
            raise NotInSpan("nonzero target against an empty basis")
        return [], 0
    monomials = sorted({m for p in (target, *basis) for m in p.keys()})
    if not monomials:
        raise RankDeficient("every basis element is zero")
    index = {m: i for i, m in enumerate(monomials)}
    rows = [[QQ(0)] * (n + 1) for _ in monomials]
    for col, p in enumerate(basis):
        for m, c in p.terms():
            rows[index[m]][col] = c
    for m, c in target.terms():
        rows[index[m]][n] = c
    reduced, pivots = DomainMatrix(rows, (len(rows), n + 1), QQ).rref()
    if n in pivots:
        raise NotInSpan("target is not a combination of the basis")
    if len(pivots) < n:
        raise RankDeficient(f"basis of {n} elements has rank {len(pivots)}")
    dense = reduced.to_Matrix()
    out = [Fraction(0)] * n
    for row, col in enumerate(pivots):
        x = dense[row, n]
        out[col] = Fraction(int(x.p), int(x.q))
    return out, len(pivots)


def matrix_rank(vectors: Sequence[PolyElement]) -> int:
    """Rank of a family of polynomials over QQ (they must share a ring)."""
    monomials = sorted({m for p in vectors for m in p.keys()})
    if not vectors or not monomials:
        return 0
    index = {m: i for i, m in enumerate(monomials)}
    rows = [[QQ(0)] * len(monomials) for _ in vectors]
    for r, p in enumerate(vectors):
        for m, c in p.terms():
            rows[r][index[m]] = c
    return DomainMatrix(rows, (len(rows), len(monomials)), QQ).rank()


def scale(p: PolyElement, c: Number) -> PolyElement:
    """p · c for a rational scalar c."""
    return p * to_qq(c)
