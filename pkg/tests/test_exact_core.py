import random
from fractions import Fraction

import pytest

from cg3.errors import NotInSpan, RankDeficient
from cg3.exact_core import (
    binomial,
    enumerate_compositions,
    factorial,
    falling,
    inv_factorial,
    matrix_rank,
    partial_derivative,
    poly_arith,
    poly_from_terms,
    poly_ring,
    poly_terms,
    reciprocal_gamma_int,
    scale,
    solve_linear_combination,
    solve_with_rank,
    substitute,
)


@pytest.fixture
def xy():
    return poly_ring(("x", "y")).gens


def test_factorials():
    assert factorial(0) == 1
    assert factorial(6) == 720
    with pytest.raises(ValueError):
        factorial(-1)


@pytest.mark.parametrize("n", [0, -1, -7])
def test_reciprocal_gamma_vanishes_at_poles(n):
    assert reciprocal_gamma_int(n) == 0


def test_reciprocal_gamma_positive():
    assert reciprocal_gamma_int(1) == 1
    assert reciprocal_gamma_int(4) == Fraction(1, 6)
    assert inv_factorial(3) == Fraction(1, 6)
    assert inv_factorial(-1) == 0


def test_falling_and_binomial():
    assert falling(5, 2) == 20
    assert falling(7, 0) == 1
    assert falling(2, 3) == 0
    assert falling(-2, 2) == 6
    assert binomial(5, 2) == 10
    assert binomial(2, 5) == 0
    assert binomial(3, -1) == 0


def test_compositions():
    comps = enumerate_compositions(2, 3)
    assert len(comps) == 6
    assert comps[0] == (0, 0, 2)
    assert comps[-1] == (2, 0, 0)
    assert all(sum(c) == 2 for c in comps)
    assert enumerate_compositions(-1, 2) == ()


def test_polynomial_helpers(xy):
    x, y = xy
    p = poly_from_terms(("x", "y"), {(1, 0): Fraction(1, 2), (0, 2): 3, (1, 1): 0})
    assert poly_terms(p) == {(1, 0): Fraction(1, 2), (0, 2): Fraction(3)}
    assert substitute(p, {"x": 2, "y": Fraction(1, 3)}) == Fraction(4, 3)
    with pytest.raises(ValueError):
        substitute(p, {"x": 1})
    assert poly_terms(scale(x, Fraction(1, 3))) == {(1, 0): Fraction(1, 3)}


def test_poly_arith_merges_rings():
    p = poly_from_terms(("x",), {(1,): 1})
    q = poly_from_terms(("y",), {(1,): 2})
    s = poly_arith(p, q, "add")
    assert substitute(s, {"x": 1, "y": 1}) == 3
    with pytest.raises(ValueError):
        poly_arith(p, q, "div")


def test_solve_linear_combination(xy):
    x, y = xy
    target = 2 * x - scale(y, Fraction(1, 3))
    assert solve_linear_combination(target, [x + y, y]) == [Fraction(2), Fraction(-7, 3)]


def test_solve_rejects_target_outside_span(xy):
    x, y = xy
    with pytest.raises(NotInSpan):
        solve_linear_combination(x * y, [x])
    with pytest.raises(NotInSpan):
        solve_linear_combination(x, [])


def test_solve_rejects_dependent_basis(xy):
    x, _ = xy
    with pytest.raises(RankDeficient):
        solve_linear_combination(x, [x, 2 * x])


def test_matrix_rank(xy):
    x, y = xy
    assert matrix_rank([x, 2 * x, y]) == 2
    assert matrix_rank([]) == 0


@pytest.mark.parametrize("n", range(1, 21))
def test_reciprocal_gamma_inverts_factorial(n):
    assert reciprocal_gamma_int(n) * factorial(n - 1) == 1


def test_polynomial_operation_values(xy):
    x, y = xy
    assert poly_arith(x + y, x - y, "mul") == x**2 - y**2
    assert partial_derivative(x**2 * y, "x") == 2 * x * y
    assert partial_derivative(x**2 * y, "z") == 0
    assert substitute(x**2 * y, {"x": 2, "y": 3}) == 12


@pytest.mark.parametrize("total,parts,expected", [
    (2, 2, [(0, 2), (1, 1), (2, 0)]),
    (0, 3, [(0, 0, 0)]),
])
def test_composition_listing(total, parts, expected):
    assert list(enumerate_compositions(total, parts)) == expected


@pytest.mark.parametrize("total,parts,count", [(3, 3, 10), (2, 3, 6), (4, 1, 1), (4, 2, 5)])
def test_composition_count(total, parts, count):
    assert len(enumerate_compositions(total, parts)) == count


def _random_poly(rng, names=("x", "y", "z")):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        exps = tuple(rng.randint(0, 2) for _ in names)
        terms[exps] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return poly_from_terms(names, terms)


@pytest.mark.parametrize("seed", range(10))
def test_ring_axioms(seed):
    rng = random.Random(seed)
    p, q, r = (_random_poly(rng) for _ in range(3))
    add = lambda a, b: poly_arith(a, b, "add")
    mul = lambda a, b: poly_arith(a, b, "mul")
    assert add(add(p, q), r) == add(p, add(q, r))
    assert mul(mul(p, q), r) == mul(p, mul(q, r))
    assert mul(p, add(q, r)) == add(mul(p, q), mul(p, r))
    assert all(c != 0 for c in poly_terms(mul(p, q)).values())


@pytest.mark.parametrize("seed", range(10))
def test_substitute_commutes_with_arithmetic(seed):
    rng = random.Random(seed)
    p, q = _random_poly(rng), _random_poly(rng)
    point = {n: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for n in ("x", "y", "z")}
    assert substitute(poly_arith(p, q, "add"), point) == substitute(p, point) + substitute(q, point)
    assert substitute(poly_arith(p, q, "mul"), point) == substitute(p, point) * substitute(q, point)


def test_solve_with_rank_reports_measured_rank(xy):
    x, y = xy
    coeffs, rank = solve_with_rank(3 * x + y, [x, y])
    assert coeffs == [Fraction(3), Fraction(1)]
    assert rank == 2
    assert solve_with_rank(x.ring.zero, []) == ([], 0)
