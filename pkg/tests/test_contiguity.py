from fractions import Fraction
from itertools import product

import pytest

from cg3.contiguity import (
    c_coeff,
    check_relation,
    d_coeff,
    d_coeff_identity,
    expand_rel,
    expand_rel1,
    f13_decomposition,
    h_coeff,
    hyper_operator_apply,
    iter_x_splits,
    pi_product,
    pre1_check,
    x_coeff,
    y_coeff,
)
from cg3.errors import RejectSplit, SingularInverse
from cg3.exact_core import scale
from cg3.gamma_series import GammaParams
from cg3.gl3_model import (
    DET_RING,
    det_equal,
    det_var,
    gamma_series_poly,
    plucker_w,
)
from cg3.tensor_space import WeightPair, enumerate_labels, label_function

GAMMAS = [GammaParams(*g) for g in product(range(4), repeat=3)]


def test_pi_product():
    g = GammaParams(1, 2, 0)
    assert pi_product(0, g) == 1
    assert pi_product(1, g) == 5
    assert pi_product(2, g) == 5 * 2 * 6
    with pytest.raises(ValueError):
        pi_product(-1, g)


def test_y_coefficients():
    g = GammaParams(0, 1, 1)
    assert y_coeff(1, g, 0) == (GammaParams(1, 1, 1), Fraction(4, 3))
    assert y_coeff(1, g, 1) == (GammaParams(1, 0, 0), Fraction(-1, 3))
    terms = expand_rel1(1, g)
    assert [(t.plucker_power, t.coeff) for t in terms] == [(0, Fraction(4, 3)), (1, Fraction(1, 3))]


def test_rel1_by_hand():
    a1, a2, a13, a23 = (det_var(n) for n in ("a1", "a2", "a13", "a23"))
    lhs = a1 * (a2 * a13 + a1 * a23)
    rhs = sum((t.to_poly() for t in expand_rel1(1, GammaParams(0, 1, 1))), DET_RING.zero)
    assert det_equal(lhs, rhs)


@pytest.mark.parametrize("u", range(4))
@pytest.mark.parametrize("g", GAMMAS, ids=str)
def test_rel1(u, g):
    assert check_relation(1, u, g)


def test_rel1_literal_reading_fails():
    assert not check_relation(1, 1, GammaParams(0, 1, 1), literal=True)


@pytest.mark.parametrize("lam,mu,omega", [t for t in product(range(4), repeat=3) if sum(t) <= 4])
def test_rel2(lam, mu, omega):
    assert check_relation(2, lam, mu, omega)


def test_h_and_x_coefficients():
    assert h_coeff(0, 0, 0, 0, 0, 0) == 1
    assert h_coeff(2, 1, 0, 0, 1, 0) == 1
    with pytest.raises(RejectSplit):
        h_coeff(1, 1, 0, -1, 0, 0)
    with pytest.raises(RejectSplit):
        x_coeff(1, 1, 0, (0, 0, 0), (0, 0, 0), (1, 0, 0), (0, 0))
    x = x_coeff(0, 0, 1, (0, 0, 0), (0, 0, 0), (0, 0, 0), (1, 0))
    assert (x.u, x.v, x.g, x.h) == (0, 0, 0, 0)
    assert x.theta == GammaParams(1, 0, 0) and x.vartheta == GammaParams(0, 1, 0)


def test_x_splits_are_admissible():
    for qs, phis, psis, omegas in iter_x_splits(2, 2, 1):
        x_coeff(2, 2, 1, qs, phis, psis, omegas)


@pytest.mark.parametrize("n", range(4))
@pytest.mark.parametrize("K", range(4))
@pytest.mark.parametrize("A", range(3))
def test_rel3(n, A, K):
    bad = [g for g in GAMMAS if not check_relation(3, n, g, A, K)]
    assert bad == []


def test_expand_rel_rejects_unknown_relation():
    with pytest.raises(ValueError):
        expand_rel(4, 1)


def test_c_coefficients():
    assert c_coeff(3, 1, 1) == 4
    assert c_coeff(3, 1, 0) == -1
    assert c_coeff(3, 1, 1, literal=True) == 3
    assert c_coeff(5, 0, 0) == 1
    with pytest.raises(ValueError):
        c_coeff(3, 1, 2)


def test_d_coefficients():
    assert d_coeff(3, 1, 1, gap=2) == 2
    assert d_coeff(3, 1, 0, gap=2) == Fraction(-1, 2)
    with pytest.raises(SingularInverse):
        d_coeff(3, 1, 1, gap=0)
    with pytest.raises(SingularInverse):
        d_coeff(0, 1, 0, literal=True)
    with pytest.raises(ValueError):
        d_coeff(3, 1, 1)


def test_d_identity_on_a1b1():
    assert d_coeff_identity(det_var("a1") * det_var("b1"), 2, 2, 1)


@pytest.mark.parametrize("wp", [WeightPair.of((2, 0), (1, 0)), WeightPair.of((2, 1), (2, 0)),
                                WeightPair.of((3, 1), (2, 1))], ids=str)
def test_d_identity_on_labels(wp):
    for L in enumerate_labels(wp):
        if L.vtype != 1:
            continue
        h = L.alpha + L.beta + L.gamma_e + L.delta + L.omega
        gap = L.alpha + L.beta
        for n in range(1, min(3, gap) + 1):
            assert d_coeff_identity(label_function(L), h, gap, n)


@pytest.mark.parametrize("k", range(4))
@pytest.mark.parametrize("g", GAMMAS, ids=str)
def test_pre1(k, g):
    assert pre1_check(k, g)


def test_hyper_operator_names():
    assert hyper_operator_apply("O_b", det_var("b1") * det_var("b23")) == DET_RING.one
    with pytest.raises(ValueError):
        hyper_operator_apply("O_c", det_var("a1"))


@pytest.mark.parametrize("g", GAMMAS, ids=str)
def test_f13(g):
    x1, x2 = f13_decomposition(g)
    lhs = det_var("a13") * gamma_series_poly(g)
    rhs = (scale(gamma_series_poly(GammaParams(g.g1, g.g2, g.g13 + 1)), x1)
           + scale(plucker_w() * gamma_series_poly(GammaParams(g.g1, g.g2 - 1, g.g13)), x2))
    assert det_equal(lhs, rhs)
