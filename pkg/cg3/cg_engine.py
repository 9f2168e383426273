# cg3/cg_engine.py
"""
Type-1 labels (case 1): the vector of pattern (M; M1−T1, M2−T2; M1−T1−S)
is E21^S/S! · E32^T2/T2! · ∇31^T1/T1! applied to the label function. It is
expanded in products gt_a(d_u)·gt_b(d_v) by five nested choices:

1. ∇31^T1/T1!: split T1 = k1 + k3 + φ' + ψ' (a3 and b3 creations, aab and abb creations);
2. rel2 on (abb)^λ (aab)^μ (ab)^ω: a q-split and φ, ψ, ω splits;
3. rel1 on a1^xa F_θ and b1^xb F_ϑ: Plücker powers t and s;
4. E32^T2/T2! split N + M, then rel3 on each side: (n1, n2, r) and (m1, m2, l);
5. E21^S/S! split H + J.

Type-2 labels (case 2) run the case-1 expansion on the dual label of the
contragredient pair and map every pattern through the flip.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .contiguity import d_coeff, iter_x_splits, x_coeff, y_coeff, z_coeff
from .errors import InconsistentTerm, InvalidLabel
from .exact_core import binomial, enumerate_compositions, factorial
from .gamma_series import GammaParams
from .gl3_model import GTDiagram, ascend_case2, descend_case1
from .tensor_space import HighestVectorLabel, WeightPair, label_weight, validate_label


@dataclass(frozen=True, order=True)
class DescentTriple:
    T1: int = 0
    T2: int = 0
    S: int = 0

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.T1, self.T2, self.S)

    def __str__(self) -> str:
        return f"({self.T1},{self.T2},{self.S})"


@dataclass(frozen=True, order=True)
class CGTerm:
    diagram_u: GTDiagram
    diagram_v: GTDiagram
    coeff: Fraction


@dataclass(frozen=True)
class PartitionChoice:
    k1: int
    k3: int
    phi_p: int  # aab creations
    psi_p: int  # abb creations
    qs: Tuple[int, int, int]
    phis: Tuple[int, int, int]
    psis: Tuple[int, int, int]
    omegas: Tuple[int, int]
    t: int
    s: int
    a_lower: Tuple[int, int, int]  # (n1, n2, r)
    b_lower: Tuple[int, int, int]  # (m1, m2, l)
    H: int
    J: int

    def r1_view(self) -> Dict[str, int]:
        """Outer-partition quantities entering the contragredient sign."""
        p1, p2, _ = self.phis
        s1, s2, _ = self.psis
        w1, w2 = self.omegas
        return {
            "T1'''": s1 + s2,
            "T1''''": p1 + p2,
            "L1": p2 + w2 + s1,
            "L2": s2 + w1 + p1,
            "T2'": self.a_lower[0] + self.a_lower[1],
            "T2''": self.b_lower[0] + self.b_lower[1],
            "S'": self.H,
            "S''": self.J,
        }


# ───────────────────────────── descents ─────────────────────────────


def target_diagram(label: HighestVectorLabel, d: DescentTriple) -> GTDiagram:
    W = label_weight(label)
    if label.vtype == 1:
        return descend_case1(W, d.T1, d.T2, d.S)
    return ascend_case2(W, d.T1, d.T2, d.S)


def iter_descents(label: HighestVectorLabel) -> Iterator[DescentTriple]:
    """Every descent whose pattern is valid, in lexicographic order."""
    M1, M2, M3 = label_weight(label)
    if label.vtype == 1:
        for T1 in range(M1 - M2 + 1):
            for T2 in range(M2 - M3 + 1):
                for S in range((M1 - T1) - (M2 - T2) + 1):
                    yield DescentTriple(T1, T2, S)
    else:
        for T1 in range(M2 - M3 + 1):
            for T2 in range(M1 - M2 + 1):
                for S in range((M2 + T2) - (M3 + T1) + 1):
                    yield DescentTriple(T1, T2, S)


# ───────────────────────────── partition choices ─────────────────────────────


def _pattern_of(m: Tuple[int, int], i: int, j: int, rho: GammaParams) -> Optional[GTDiagram]:
    """Pattern of a3^i/i! a12^j/j! F_ρ in the representation with top (m1, m2, 0)."""
    m1, m2 = m
    d = GTDiagram(m1, m2, 0, m1 - i, j, rho.g1 + m2)
    if rho.is_empty():
        return None
    if rho.g23 != 0 or rho.g2 != d.k1 - d.s or rho.g13 != m2 - d.k2 or not d.is_valid():
        raise InconsistentTerm(f"F{rho} with a3^{i} a12^{j} matches no pattern of top {m}")
    return d


def enumerate_partition_choices(label: HighestVectorLabel, d: DescentTriple,
                                wp: WeightPair) -> List[PartitionChoice]:
    if label.vtype != 1:
        raise InvalidLabel("partition choices are enumerated for type-1 labels")
    validate_label(label, wp)
    if not target_diagram(label, d).is_valid():
        return []
    L = label
    out: List[PartitionChoice] = []
    for k1, k3, phi_p, psi_p in enumerate_compositions(d.T1, 4):
        xa = L.alpha - k1 - psi_p
        xb = L.beta - k3 - phi_p
        ya = L.gamma_e - phi_p
        yb = L.delta - psi_p
        if min(xa, xb, ya, yb) < 0:
            continue
        lam, mu = L.psi + psi_p, L.phi + phi_p
        for qs, phis, psis, omegas in iter_x_splits(lam, mu, L.omega):
            x = x_coeff(lam, mu, L.omega, qs, phis, psis, omegas)
            q = sum(qs)
            for t in range(xa + 1):
                Ja = ya + x.v + q + t
                for s in range(xb + 1):
                    Eb = yb + x.h + q + s
                    for N, M in enumerate_compositions(d.T2, 2):
                        for a_lower in _lowerings(N, Ja):
                            for b_lower in _lowerings(M, Eb):
                                for H, J in enumerate_compositions(d.S, 2):
                                    out.append(PartitionChoice(
                                        k1, k3, phi_p, psi_p, tuple(qs), tuple(phis),
                                        tuple(psis), tuple(omegas), t, s,
                                        a_lower, b_lower, H, J))
    return out


def _lowerings(n: int, k2: int) -> Iterator[Tuple[int, int, int]]:
    for n1, n2 in enumerate_compositions(n, 2):
        if n2 > k2:
            continue
        for r in range(n2 + 1):
            yield (n1, n2, r)


# ───────────────────────────── coefficient ─────────────────────────────


def _lower_side(m: Tuple[int, int], i: int, j: int, gamma: GammaParams,
                lowering: Tuple[int, int, int], H: int, literal: bool):
    """Normalized a3^i/i! a12^j/j! F_γ through rel3 and E21^H/H!."""
    n1, n2, r = lowering
    z = z_coeff(gamma, i, j, n1, n2, r, literal)
    if not z.Z:
        return None, Fraction(0)
    coeff = z.Z * (-1) ** r * factorial(z.i + r) * factorial(z.j + r)
    eps = z.epsilon
    coeff *= binomial(eps.g2 + H, H)
    rho = GammaParams(eps.g1 - H, eps.g2 + H, eps.g13, eps.g23)
    return _pattern_of(m, z.i + r, z.j + r, rho), coeff


def coefcg_term(choice: PartitionChoice, label: HighestVectorLabel, d: DescentTriple,
                wp: WeightPair, literal: bool = False) -> Tuple[Optional[Tuple[GTDiagram, GTDiagram]], Fraction]:
    """Diagram pair and coefficient contributed by one partition choice (case 1)."""
    L, c = label, choice
    zero = (None, Fraction(0))
    h = L.alpha + L.beta + L.gamma_e + L.delta + L.omega
    gap = L.alpha + L.beta
    xa = L.alpha - c.k1 - c.psi_p
    xb = L.beta - c.k3 - c.phi_p
    ya = L.gamma_e - c.phi_p
    yb = L.delta - c.psi_p
    lam, mu = L.psi + c.psi_p, L.phi + c.phi_p

    coeff = d_coeff(h, d.T1, c.k1 + c.k3, gap, literal)
    coeff *= Fraction(factorial(lam), factorial(c.psi_p))
    coeff *= Fraction(factorial(mu), factorial(c.phi_p))

    x = x_coeff(lam, mu, L.omega, c.qs, c.phis, c.psis, c.omegas, literal)
    if not x.X:
        return zero
    q = sum(c.qs)
    coeff *= x.X / (factorial(c.k1) * factorial(ya) * factorial(xa)
                    * factorial(c.k3) * factorial(yb) * factorial(xb))

    theta_a, Ya = y_coeff(xa, x.theta, c.t, literal)
    theta_b, Yb = y_coeff(xb, x.vartheta, c.s, literal)
    if not Ya or not Yb:
        return zero
    Ia, Ja = c.k1 + x.u + q + c.t, ya + x.v + q + c.t
    Ib, Jb = c.k3 + x.g + q + c.s, yb + x.h + q + c.s
    coeff *= Ya * Yb * factorial(Ia) * factorial(Ja) * factorial(Ib) * factorial(Jb)

    du, ca = _lower_side(wp.w1.as_tuple(), Ia, Ja, theta_a, c.a_lower, c.H, literal)
    if not ca:
        return zero
    dv, cb = _lower_side(wp.w2.as_tuple(), Ib, Jb, theta_b, c.b_lower, c.J, literal)
    if not cb:
        return zero
    coeff *= ca * cb
    if du is None or dv is None or not coeff:
        return zero
    return (du, dv), coeff


# ───────────────────────────── expansions ─────────────────────────────


def collect_terms(terms: Iterable[CGTerm]) -> List[CGTerm]:
    acc: Dict[Tuple[GTDiagram, GTDiagram], Fraction] = defaultdict(Fraction)
    for t in terms:
        acc[(t.diagram_u, t.diagram_v)] += t.coeff
    return [CGTerm(u, v, c) for (u, v), c in sorted(acc.items()) if c]


def cg_expansion_case1(label: HighestVectorLabel, d: DescentTriple, wp: WeightPair,
                       literal: bool = False) -> List[CGTerm]:
    if label.vtype != 1:
        raise InvalidLabel("case 1 takes a type-1 label")
    out = []
    for choice in enumerate_partition_choices(label, d, wp):
        pair, coeff = coefcg_term(choice, label, d, wp, literal)
        if pair is not None and coeff:
            out.append(CGTerm(pair[0], pair[1], coeff))
    return collect_terms(out)


def contragredient_signs(choice: PartitionChoice, label: HighestVectorLabel, d: DescentTriple,
                         pair: Tuple[GTDiagram, GTDiagram]) -> Tuple[int, int]:
    """Both forms of the case-2 sign for one choice of the dual expansion.

    The first is (−1)^(θ+T2+S) times the pattern signs of the flipped pair;
    the second is (−1)^(θ + T1''' + T1'''' + L1 + L2).
    """
    first = (-1) ** (label.theta + d.T2 + d.S) * pair[0].dual_sign() * pair[1].dual_sign()
    v = choice.r1_view()
    second = (-1) ** (label.theta + v["T1'''"] + v["T1''''"] + v["L1"] + v["L2"])
    return first, second


def _case2_walk(label: HighestVectorLabel, d: DescentTriple, wp: WeightPair, literal: bool):
    if label.vtype != 2:
        raise InvalidLabel("case 2 takes a type-2 label")
    validate_label(label, wp)
    dual, dual_wp = label.dual(), wp.dual()
    m1, n1 = wp.w1.m1, wp.w2.m1
    for choice in enumerate_partition_choices(dual, d, dual_wp):
        pair, coeff = coefcg_term(choice, dual, d, dual_wp, literal)
        if pair is None or not coeff:
            continue
        yield choice, pair, coeff, (pair[0].flip(m1), pair[1].flip(n1))


def cg_expansion_case2(label: HighestVectorLabel, d: DescentTriple, wp: WeightPair,
                       literal: bool = False) -> List[CGTerm]:
    out = []
    for choice, pair, coeff, flipped in _case2_walk(label, d, wp, literal):
        sign, _ = contragredient_signs(choice, label, d, pair)
        out.append(CGTerm(flipped[0], flipped[1], sign * coeff))
    return collect_terms(out)


def sign_rule_counterexamples(label: HighestVectorLabel, d: DescentTriple,
                              wp: WeightPair) -> List[Tuple[PartitionChoice, int, int]]:
    """Choices where the two case-2 sign forms disagree."""
    bad = []
    for choice, pair, _, _ in _case2_walk(label, d, wp, False):
        first, second = contragredient_signs(choice, label, d, pair)
        if first != second:
            bad.append((choice, first, second))
    return bad


def cg_expansion(label: HighestVectorLabel, d: DescentTriple, wp: WeightPair,
                 literal: bool = False) -> List[CGTerm]:
    validate_label(label, wp)
    if not target_diagram(label, d).is_valid():
        return []
    if label.vtype == 1:
        return cg_expansion_case1(label, d, wp, literal)
    return cg_expansion_case2(label, d, wp, literal)
