# cg3/contiguity.py
"""
Coefficient formulas for

* the action of ∇31^n on highest vectors (c and d coefficients),
* rel1:  a1^u F_γ            = Σ_p Y  W^p F_γτ,
* rel2:  (abb)^λ (aab)^μ (ab)^ω / (λ!μ!ω!) = Σ X · a3^u a12^v b3^g b12^h W_a^q W_b^q F_θ(a) F_ϑ(b),
* rel3:  E32^n/n! (a3^A/A! a12^K/K! F_γ) = Σ Z · a3^i a12^j W^r F_ε,

with W = a1·a23 − a2·a13. Every coefficient function takes `literal=True`
to evaluate the formula exactly as first written down, which the verify
suite reports next to the adopted reading.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from sympy.utilities.iterables import multiset_permutations

from .errors import NotInSpan, RejectSplit, SingularInverse
from .exact_core import (
    enumerate_compositions,
    factorial,
    falling,
    scale,
    solve_linear_combination,
)
from .gamma_series import GammaParams, eval_at_one
from .gl3_model import (
    DET_RING,
    as_det,
    det_equal,
    det_monomial,
    det_var,
    gamma_series_poly,
    generator_action,
    lowering_apply,
    plucker_w,
)


def pi_product(p: int, gamma: GammaParams) -> int:
    if p < 0:
        raise ValueError("Π needs p >= 0")
    size = sum(gamma.as_tuple())
    out = 1
    for t in range(1, p + 1):
        out *= t * (t + 1 + size)
    return out


def _ratio(num: Fraction, *den) -> Fraction:
    """num / Π den, zero when any factor of the denominator vanishes."""
    d = Fraction(1)
    for x in den:
        d *= x
    if d == 0:
        return Fraction(0)
    return Fraction(num) / d


# ───────────────────────────── ∇31 powers ─────────────────────────────


@lru_cache(maxsize=4096)
def _c_table(h: int, k: int, l: int) -> int:
    if k < 0 or l < 0:
        return 0
    if k == 0 and l == 0:
        return 1
    return (h + 2 - k - 2 * l) * _c_table(h, k - 1, l) - _c_table(h, k, l - 1)


def c_coeff(h: int, n: int, k: int, literal: bool = False) -> int:
    """Coefficient of O1^k O2^(n−k) in the n-th power of (E11−E22+1)·∇31."""
    if not 0 <= k <= n:
        raise ValueError("c coefficient needs 0 <= k <= n")
    if literal:
        total = 0
        for idx in combinations(range(1, n + 1), k):
            term = 1
            for i in idx:
                term *= h + 1 - i
            total += term
        return (-1) ** (n - k) * total
    return _c_table(h, k, n - k)


def d_coeff(h: int, n: int, k: int, gap: Optional[int] = None, literal: bool = False) -> Fraction:
    """Coefficient of (O1^k/k!)(O2^(n−k)/(n−k)!) in ∇31^n/n!.

    `gap` is the (E11 − E22)-eigenvalue α+β of the vector acted on.
    """
    if not 0 <= k <= n:
        raise ValueError("d coefficient needs 0 <= k <= n")
    if literal:
        total = Fraction(0)
        for idx in combinations(range(1, n + 1), n - k):
            term = Fraction(1)
            for i in idx:
                if h + 1 - i == 0:
                    raise SingularInverse(f"factor h+1-i vanishes at h={h}, i={i}")
                term /= h + 1 - i
            total += term
        return (-1) ** (n - k) * factorial(k) * factorial(n - k) * total
    if gap is None:
        raise ValueError("adopted d coefficient needs the weight gap")
    denom = factorial(n) * falling(gap, n)
    if denom == 0:
        raise SingularInverse(f"(E11 − E22 + 1) vanishes along ∇31^{n} at gap {gap}")
    return Fraction(_c_table(h, k, n - k) * factorial(k) * factorial(n - k), denom)


def o1_apply(p):
    """a3 ∂/∂a1 + b3 ∂/∂b1 with determinant variables treated as free."""
    p = as_det(p)
    return (det_var("a3") * p.diff(det_var("a1"))
            + det_var("b3") * p.diff(det_var("b1")))


def o2_apply(p):
    """(aab) ∂²/∂a12∂b1 + (abb) ∂²/∂a1∂b12."""
    p = as_det(p)
    return (det_var("aab") * p.diff(det_var("a12")).diff(det_var("b1"))
            + det_var("abb") * p.diff(det_var("a1")).diff(det_var("b12")))


def d_coeff_identity(f, h: int, gap: int, n: int) -> bool:
    """∇31^n/n! f == Σ_k d (O1^k/k!)(O2^(n−k)/(n−k)!) f as functions."""
    lhs = scale(lowering_apply("nabla31", n, f), Fraction(1, factorial(n)))
    rhs = DET_RING.zero
    for k in range(n + 1):
        term = f
        for _ in range(n - k):
            term = o2_apply(term)
        for _ in range(k):
            term = o1_apply(term)
        rhs += scale(term, d_coeff(h, n, k, gap) / (factorial(k) * factorial(n - k)))
    return det_equal(lhs, rhs)


# ───────────────────────────── rel1 ─────────────────────────────


def y_coeff(u: int, gamma: GammaParams, p: int, literal: bool = False) -> Tuple[GammaParams, Fraction]:
    """(γτ, Y): Y is the coefficient of (a2a13 − a1a23)^p F_γτ in a1^u F_γ."""
    if u < 0 or p < 0:
        raise ValueError("y coefficient needs u, p >= 0")
    tau = GammaParams(gamma.g1 + u, gamma.g2 - p, gamma.g13 - p, 0)
    if literal:
        num = falling(u, p) * eval_at_one(gamma)
    else:
        shifted = GammaParams(gamma.g1 + p, gamma.g2 - p, gamma.g13 - p, 0)
        num = (-1) ** p * falling(u, p) * eval_at_one(shifted)
    return tau, _ratio(num, pi_product(p, tau), eval_at_one(tau))


# ───────────────────────────── rel2 ─────────────────────────────


def h_coeff(lam: int, mu: int, omega: int, q1: int, q2: int, q3: int,
            literal: bool = False) -> int:
    if min(q1, q2, q3) < 0:
        raise RejectSplit("q-split parts must be nonnegative")
    q = q1 + q2 + q3
    total = 0
    for order in multiset_permutations([1] * q1 + [2] * q2 + [3] * q3):
        term = 1
        n2 = n3 = 0
        for j, part in enumerate(order, start=1):
            if part == 1:
                if literal:
                    term *= (q - j) + (lam - n2) + (mu - n3) + omega
                else:
                    term *= lam + mu + omega - q - j + 2 - n2 - n3
            elif part == 2:
                n2 += 1
            else:
                n3 += 1
        total += term
    return total


@dataclass(frozen=True)
class XTerm:
    u: int  # a3
    v: int  # a12
    g: int  # b3
    h: int  # b12
    theta: GammaParams
    vartheta: GammaParams
    X: Fraction


def x_coeff(lam: int, mu: int, omega: int, qs: Sequence[int], phis: Sequence[int],
            psis: Sequence[int], omegas: Sequence[int], literal: bool = False) -> XTerm:
    q1, q2, q3 = qs
    p1, p2, p3 = phis
    s1, s2, s3 = psis
    w1, w2 = omegas
    q = q1 + q2 + q3
    parts = (q1, q2, q3, p1, p2, p3, s1, s2, s3, w1, w2)
    if min(parts) < 0:
        raise RejectSplit(f"negative part in split {parts}")
    if p1 + p2 + p3 != lam - q - q2:
        raise RejectSplit("φ-split does not sum to λ − q − q2")
    if s1 + s2 + s3 != mu - q - q3:
        raise RejectSplit("ψ-split does not sum to μ − q − q3")
    if w1 + w2 != omega:
        raise RejectSplit("ω-split does not sum to ω")
    theta = GammaParams(p1 + w1 - s1, p2 + w2 + s1, s2 + s1, 0)
    vartheta = GammaParams(s1 + w2 - p1, s2 + w1 + p1, p2 + p1, 0)
    sign = -1 if (p2 + s2 + w2 + q2 + q3) % 2 else 1
    num = Fraction(sign * h_coeff(lam, mu, omega, q1, q2, q3, literal) * factorial(q))
    for x in parts[3:]:
        num /= factorial(x)
    X = _ratio(num, pi_product(q, theta), pi_product(q, vartheta),
               eval_at_one(theta), eval_at_one(vartheta))
    return XTerm(p3 + q2, s3 + q3, s3 + q3, p3 + q2, theta, vartheta, X)


def iter_x_splits(lam: int, mu: int, omega: int):
    """Every admissible (q-split, φ-split, ψ-split, ω-split) of rel2."""
    for q in range(min(lam, mu) + 1):
        for qs in enumerate_compositions(q, 3):
            rest_l = lam - q - qs[1]
            rest_m = mu - q - qs[2]
            if rest_l < 0 or rest_m < 0:
                continue
            for phis in enumerate_compositions(rest_l, 3):
                for psis in enumerate_compositions(rest_m, 3):
                    for omegas in enumerate_compositions(omega, 2):
                        yield qs, phis, psis, omegas


# ───────────────────────────── rel3 ─────────────────────────────


@dataclass(frozen=True)
class ZTerm:
    i: int
    j: int
    epsilon: GammaParams
    Z: Fraction


def z_coeff(gamma: GammaParams, m1_minus_k1: int, k2: int, n1: int, n2: int, r: int,
            literal: bool = False) -> ZTerm:
    """Coefficient of a3^i a12^j W^r F_ε in E32^(n1+n2)/(n1+n2)! applied to a3^A/A! a12^k2/k2! F_γ."""
    if min(n1, n2, r, m1_minus_k1, k2) < 0:
        raise ValueError("z coefficient needs nonnegative indices")
    A = m1_minus_k1
    eps = GammaParams(gamma.g1, gamma.g2 - n1 - r, gamma.g13 + n2 - r, 0)
    i, j = A + n1, k2 - n2
    if n2 > k2 or (not literal and r > n2):
        return ZTerm(i, j, eps, Fraction(0))
    if literal:
        lead = GammaParams(gamma.g1, gamma.g2 - n2, gamma.g13, gamma.g23)
        num = eval_at_one(lead)
        den_f = factorial(A) * factorial(n1) * factorial(k2 - n2) * factorial(n2)
    else:
        lead = GammaParams(gamma.g1, gamma.g2 - n1 - r, gamma.g13, 0)
        num = (-1) ** r * eval_at_one(lead)
        den_f = factorial(A) * factorial(n1) * factorial(k2 - n2) * factorial(n2 - r)
    return ZTerm(i, j, eps, _ratio(num, pi_product(r, eps), eval_at_one(eps), den_f))


# ───────────────────────────── relation terms ─────────────────────────────


@dataclass(frozen=True)
class RelationTerm:
    """coeff · Π prefactor · W_a^p [· W_b^p] · F_γa(a) [· F_γb(b)]."""

    prefactor_exponents: Tuple[Tuple[str, int], ...]
    plucker_power: int
    gamma: GammaParams
    coeff: Fraction
    gamma_b: Optional[GammaParams] = None

    def to_poly(self):
        out = det_monomial(dict(self.prefactor_exponents), self.coeff)
        out *= plucker_w("a") ** self.plucker_power
        out *= gamma_series_poly(self.gamma, "a")
        if self.gamma_b is not None:
            out *= plucker_w("b") ** self.plucker_power
            out *= gamma_series_poly(self.gamma_b, "b")
        return out


def expand_rel1(u: int, gamma: GammaParams, literal: bool = False) -> List[RelationTerm]:
    out = []
    for p in range(u + 1):
        tau, Y = y_coeff(u, gamma, p, literal)
        if Y:
            out.append(RelationTerm((), p, tau, Y * (-1) ** p))
    return out


def expand_rel2(lam: int, mu: int, omega: int, literal: bool = False) -> List[RelationTerm]:
    out = []
    for qs, phis, psis, omegas in iter_x_splits(lam, mu, omega):
        x = x_coeff(lam, mu, omega, qs, phis, psis, omegas, literal)
        if not x.X:
            continue
        pre = tuple((n, e) for n, e in (("a3", x.u), ("a12", x.v), ("b3", x.g), ("b12", x.h)) if e)
        out.append(RelationTerm(pre, sum(qs), x.theta, x.X, x.vartheta))
    return out


def expand_rel3(n: int, gamma: GammaParams, m1_minus_k1: int, k2: int,
                literal: bool = False) -> List[RelationTerm]:
    out = []
    for n1, n2 in enumerate_compositions(n, 2):
        for r in range(n2 + 1):
            z = z_coeff(gamma, m1_minus_k1, k2, n1, n2, r, literal)
            if not z.Z:
                continue
            pre = tuple((name, e) for name, e in (("a3", z.i), ("a12", z.j)) if e)
            out.append(RelationTerm(pre, r, z.epsilon, z.Z))
    return out


def expand_rel(which: int, *inputs, literal: bool = False) -> List[RelationTerm]:
    if which == 1:
        return expand_rel1(*inputs, literal=literal)
    if which == 2:
        return expand_rel2(*inputs, literal=literal)
    if which == 3:
        return expand_rel3(*inputs, literal=literal)
    raise ValueError(f"no relation {which}")


def relation_lhs(which: int, *inputs):
    if which == 1:
        u, gamma = inputs
        return det_var("a1") ** u * gamma_series_poly(gamma, "a")
    if which == 2:
        lam, mu, omega = inputs
        return det_monomial({"abb": lam, "aab": mu, "ab12": omega},
                            Fraction(1, factorial(lam) * factorial(mu) * factorial(omega)))
    if which == 3:
        n, gamma, A, K = inputs
        p = det_monomial({"a3": A, "a12": K}, Fraction(1, factorial(A) * factorial(K)))
        p *= gamma_series_poly(gamma, "a")
        for _ in range(n):
            p = generator_action(3, 2, p)
        return scale(p, Fraction(1, factorial(n)))
    raise ValueError(f"no relation {which}")


def relation_rhs(terms: Sequence[RelationTerm]):
    out = DET_RING.zero
    for t in terms:
        out += t.to_poly()
    return out


def check_relation(which: int, *inputs, literal: bool = False) -> bool:
    return det_equal(relation_lhs(which, *inputs),
                     relation_rhs(expand_rel(which, *inputs, literal=literal)))


# ───────────────────────────── hypergeometric operator ─────────────────────────────


def hyper_operator_apply(which: str, p):
    """∂²/∂f1∂f23 − ∂²/∂f2∂f13 for f = a (O_a) or b (O_b), variables treated as free."""
    f = {"O_a": "a", "O_b": "b", "a": "a", "b": "b"}.get(which)
    if f is None:
        raise ValueError(f"unknown hypergeometric operator {which!r}")
    p = as_det(p)
    g = {n: det_var(f"{f}{n}") for n in ("1", "2", "13", "23")}
    return p.diff(g["1"]).diff(g["23"]) - p.diff(g["2"]).diff(g["13"])


def pre1_check(k: int, gamma: GammaParams) -> bool:
    """O(W^k F_γ) == (k(k+1) + k|γ|) W^(k−1) F_γ."""
    W = plucker_w("a")
    F = gamma_series_poly(gamma, "a")
    lhs = hyper_operator_apply("O_a", W ** k * F)
    if k == 0:
        return not lhs
    size = gamma.g1 + gamma.g2 + gamma.g13
    rhs = W ** (k - 1) * F * (k * (k + 1) + k * size)
    return lhs == rhs


def f13_decomposition(gamma: GammaParams) -> Tuple[Fraction, Fraction]:
    """(X1, X2) with a13 F_γ = X1 F_{γ+e13} + W X2 F_{γ−e2}."""
    target = det_var("a13") * gamma_series_poly(gamma, "a")
    first = gamma_series_poly(GammaParams(gamma.g1, gamma.g2, gamma.g13 + 1, gamma.g23), "a")
    second = plucker_w("a") * gamma_series_poly(
        GammaParams(gamma.g1, gamma.g2 - 1, gamma.g13, gamma.g23), "a")
    basis = (first, second)
    live = [b for b in basis if b]
    if not live:
        if target:
            raise NotInSpan("a13·F_γ has no admissible decomposition")
        return Fraction(0), Fraction(0)
    it = iter(solve_linear_combination(target, live))
    return tuple(next(it) if b else Fraction(0) for b in basis)
