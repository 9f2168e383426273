from fractions import Fraction
from itertools import combinations_with_replacement, product

import pytest

from cg3.errors import InvalidDiagram, NotAWeightVector, SingularInverse
from cg3.exact_core import factorial, scale
from cg3.gl3_model import (
    COLUMNS,
    DET_NAMES,
    DET_RING,
    GTDiagram,
    HighestWeight,
    _spectral_inverse,
    chain_scale,
    descend_case1,
    det_equal,
    det_monomial,
    det_var,
    dual_map,
    embed_matrix_entries,
    generator_action,
    gt_vector,
    highest_vector,
    is_zero_function,
    iter_diagrams,
    left_shift,
    lowering_apply,
    nabla13,
    nabla31,
    plucker_w,
    weight_of,
    weyl_dimension,
)

a1, a2, a3 = det_var("a1"), det_var("a2"), det_var("a3")
a12, a13, a23 = det_var("a12"), det_var("a13"), det_var("a23")


@pytest.mark.parametrize("f", ["a", "b"])
def test_plucker_relation(f):
    assert is_zero_function(plucker_w(f) + det_var(f"{f}3") * det_var(f"{f}12"))
    assert plucker_w(f)


def test_alphabet():
    assert len(DET_NAMES) == 20
    assert {"ab12", "aab", "abb", "aabb1213", "aabb1323"} <= set(DET_NAMES)


def test_generators_on_single_entries():
    assert det_equal(generator_action(2, 1, a1), a2)
    assert det_equal(generator_action(1, 2, a2), a1)
    assert is_zero_function(generator_action(2, 1, a12))
    assert det_equal(generator_action(3, 2, a12), a13)
    assert det_equal(generator_action(1, 1, a1 * a12), 2 * a1 * a12)
    with pytest.raises(ValueError):
        generator_action(4, 1, a1)


@pytest.mark.parametrize("i,j", list(product(COLUMNS, repeat=2)))
def test_generators_match_left_shift(i, j):
    for v in DET_RING.gens:
        assert embed_matrix_entries(generator_action(i, j, v)) == left_shift(i, j, embed_matrix_entries(v))


def test_commutator_on_mixed_monomial():
    p = det_var("aab") * det_var("b13") * det_var("ab12")
    lhs = generator_action(2, 1, generator_action(1, 2, p)) - generator_action(1, 2, generator_action(2, 1, p))
    rhs = generator_action(2, 2, p) - generator_action(1, 1, p)
    assert det_equal(lhs, rhs)


def test_nabla31_on_a1():
    assert det_equal(nabla31(a1), 2 * a3)
    assert det_equal(nabla13(a23), 2 * a12)


def test_spectral_inverse_singular():
    with pytest.raises(SingularInverse):
        _spectral_inverse(a2, lambda w: w[0] - w[1] + 1)
    assert _spectral_inverse(a1, lambda w: w[0] + 1) == scale(a1, Fraction(1, 2))


def test_weight_of():
    assert weight_of(a1 * a23) == (1, 1, 1)
    assert weight_of(det_var("aab")) == (1, 1, 1)
    with pytest.raises(NotAWeightVector):
        weight_of(a1 + a2)
    with pytest.raises(ValueError):
        weight_of(DET_RING.zero)
    with pytest.raises(ValueError):
        weight_of(plucker_w("a") + a3 * a12)


def test_lowering_apply_unknown_op():
    with pytest.raises(ValueError):
        lowering_apply("E31", 1, a1)
    with pytest.raises(ValueError):
        lowering_apply("E21", -1, a1)


def test_diagrams():
    d = GTDiagram(2, 1, 0, 2, 0, 1)
    assert d.is_valid()
    assert d.weight() == (1, 1, 1)
    assert str(d) == "(2,1,0;2,0;1)"
    with pytest.raises(InvalidDiagram):
        GTDiagram(2, 1, 0, 0, 0, 0).validate()
    assert len(list(iter_diagrams(2, 1, 0))) == weyl_dimension((2, 1, 0)) == 8
    assert HighestWeight(3, 1).dim() == 15
    with pytest.raises(ValueError):
        HighestWeight(1, 2)


def test_flip_is_an_involution():
    for d in iter_diagrams(3, 1, 0):
        f = d.flip()
        assert f.is_valid()
        assert f.flip(d.m1) == d


def test_highest_vector_is_monomial():
    hw = HighestWeight(3, 1)
    expect = det_monomial({"a1": 2, "a12": 1}, Fraction(1, 2))
    assert det_equal(highest_vector(hw), expect)
    for i, j in ((1, 2), (1, 3), (2, 3)):
        assert is_zero_function(generator_action(i, j, expect))


@pytest.mark.parametrize("hw", [HighestWeight(m1, m2) for m1 in range(4) for m2 in range(m1 + 1)])
def test_gt_vectors(hw):
    for d in hw.diagrams():
        g = gt_vector(d)
        assert weight_of(g) == d.weight()
        assert det_equal(dual_map(g), d.dual_sign() * gt_vector(d.flip()))


@pytest.mark.parametrize("hw", [HighestWeight(m1, m2) for m1 in range(4) for m2 in range(m1 + 1)])
def test_lowering_chain_reaches_gt_vector(hw):
    m1, m2 = hw.as_tuple()
    top = highest_vector(hw)
    for d in hw.diagrams():
        T1, T2, S = m1 - d.k1, m2 - d.k2, d.k1 - d.s
        assert descend_case1((m1, m2, 0), T1, T2, S) == d
        v = top
        for op, power in (("nabla31", T1), ("E32", T2), ("E21", S)):
            v = scale(lowering_apply(op, power, v), Fraction(1, factorial(power)))
        assert det_equal(v, scale(gt_vector(d), chain_scale(m1, m2, T1)))


def test_chain_scale():
    assert chain_scale(1, 0, 1) == 2
    assert chain_scale(2, 2, 0) == 1
    assert chain_scale(2, 1, 2) == 0


def test_gt_vector_needs_m3_zero():
    with pytest.raises(InvalidDiagram):
        gt_vector(GTDiagram(2, 1, 1, 2, 1, 1))


def test_dual_map():
    p = a1 * det_var("b12") + det_var("ab13")
    assert dual_map(dual_map(p)) == p
    assert dual_map(a2) == -a13
    for i, j in ((2, 1), (3, 2), (3, 1)):
        for v in DET_RING.gens:
            assert det_equal(dual_map(generator_action(i, j, v)), -generator_action(j, i, dual_map(v)))


def _nabla_or_none(fn, p):
    try:
        return fn(p)
    except SingularInverse:
        return None


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_dual_map_conjugates_nabla31_to_nabla13(degree):
    gens = DET_RING.gens
    bad = []
    for idx in combinations_with_replacement(range(len(gens)), degree):
        mono = DET_RING.one
        for a in idx:
            mono *= gens[a]
        lhs = _nabla_or_none(lambda p: dual_map(nabla31(p)), mono)
        rhs = _nabla_or_none(lambda p: nabla13(dual_map(p)), mono)
        if lhs is None or rhs is None:
            ok = lhs is rhs
        else:
            ok = det_equal(lhs, rhs)
        if not ok:
            bad.append(tuple(DET_NAMES[a] for a in idx))
    assert bad == []
