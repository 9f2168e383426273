# cg3/tensor_space.py
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import InvalidLabel
from .exact_core import factorial
from .gl3_model import (
    HighestWeight,
    det_monomial,
    dual_map,
    iter_diagrams,
    weyl_dimension,
)


@dataclass(frozen=True, order=True)
class WeightPair:
    w1: HighestWeight
    w2: HighestWeight

    @classmethod
    def of(cls, m: Sequence[int], mbar: Sequence[int]) -> "WeightPair":
        return cls(HighestWeight(*m), HighestWeight(*mbar))

    def dual(self) -> "WeightPair":
        return WeightPair(self.w1.dual(), self.w2.dual())

    def __str__(self) -> str:
        return f"({self.w1.m1},{self.w1.m2})x({self.w2.m1},{self.w2.m2})"


@dataclass(frozen=True, order=True)
class HighestVectorLabel:
    """Exponents of a highest vector of U⊗V.

    Type 1: a1^α b1^β a12^γ b12^δ (ab)12^ω (aab)^φ (abb)^ψ / (α!β!γ!δ!ω!).
    Type 2: a1^α b1^β a12^γ b12^δ (abb)^φ (aab)^ψ (aabb)1213^θ / (α!β!γ!δ!θ!), θ ≥ 1.
    """

    vtype: int
    alpha: int = 0
    beta: int = 0
    gamma_e: int = 0
    delta: int = 0
    omega: int = 0
    phi: int = 0
    psi: int = 0
    theta: int = 0

    def exponents(self) -> Tuple[int, ...]:
        return (self.alpha, self.beta, self.gamma_e, self.delta,
                self.omega, self.phi, self.psi, self.theta)

    def selector(self) -> Tuple[int, int, int, int, int]:
        """(type, ω, φ, ψ, θ); the remaining exponents follow from the weights."""
        return (self.vtype, self.omega, self.phi, self.psi, self.theta)

    def dual(self) -> "HighestVectorLabel":
        """The type-1 label of the contragredient pair whose image spans this type-2 label's lowest vector."""
        if self.vtype != 2:
            raise InvalidLabel("only type-2 labels are dualized")
        return HighestVectorLabel(1, self.gamma_e, self.delta, self.alpha, self.beta,
                                  self.theta, self.phi, self.psi, 0)

    def __str__(self) -> str:
        return f"type{self.vtype}" + str(self.exponents())


def _constraint_gaps(label: HighestVectorLabel, wp: WeightPair) -> Tuple[int, int, int, int]:
    m1, m2 = wp.w1.as_tuple()
    n1, n2 = wp.w2.as_tuple()
    L = label
    if L.vtype == 1:
        return (L.alpha + L.omega + L.psi - (m1 - m2), L.gamma_e + L.phi - m2,
                L.beta + L.omega + L.phi - (n1 - n2), L.delta + L.psi - n2)
    return (L.alpha + L.phi - (m1 - m2), L.gamma_e + L.theta + L.psi - m2,
            L.beta + L.psi - (n1 - n2), L.delta + L.phi + L.theta - n2)


def is_valid_label(label: HighestVectorLabel, wp: WeightPair) -> bool:
    if label.vtype not in (1, 2) or min(label.exponents()) < 0:
        return False
    if label.vtype == 1 and label.theta != 0:
        return False
    if label.vtype == 2 and (label.omega != 0 or label.theta < 1):
        return False
    return _constraint_gaps(label, wp) == (0, 0, 0, 0)


def validate_label(label: HighestVectorLabel, wp: WeightPair) -> HighestVectorLabel:
    if not is_valid_label(label, wp):
        raise InvalidLabel(f"{label} is not a highest-vector label of {wp}")
    return label


def label_from_selector(vtype: int, omega: int, phi: int, psi: int, theta: int,
                        wp: WeightPair) -> HighestVectorLabel:
    """Solves the weight constraints for α, β, γ, δ."""
    m1, m2 = wp.w1.as_tuple()
    n1, n2 = wp.w2.as_tuple()
    if vtype == 1:
        label = HighestVectorLabel(1, m1 - m2 - omega - psi, n1 - n2 - omega - phi,
                                   m2 - phi, n2 - psi, omega, phi, psi, theta)
    elif vtype == 2:
        label = HighestVectorLabel(2, m1 - m2 - phi, n1 - n2 - psi, m2 - theta - psi,
                                   n2 - phi - theta, omega, phi, psi, theta)
    else:
        raise InvalidLabel(f"label type must be 1 or 2, got {vtype}")
    return validate_label(label, wp)


def enumerate_labels(wp: WeightPair) -> List[HighestVectorLabel]:
    m1, m2 = wp.w1.as_tuple()
    n1, n2 = wp.w2.as_tuple()
    out: List[HighestVectorLabel] = []
    for omega in range(min(m1 - m2, n1 - n2) + 1):
        for phi in range(min(m2, n1 - n2 - omega) + 1):
            for psi in range(min(n2, m1 - m2 - omega) + 1):
                out.append(label_from_selector(1, omega, phi, psi, 0, wp))
    for theta in range(1, min(m2, n2) + 1):
        for phi in range(min(m1 - m2, n2 - theta) + 1):
            for psi in range(min(n1 - n2, m2 - theta) + 1):
                out.append(label_from_selector(2, 0, phi, psi, theta, wp))
    return out


def label_weight(label: HighestVectorLabel) -> Tuple[int, int, int]:
    L = label
    if L.vtype == 1:
        w3 = L.phi + L.psi
        w2 = L.gamma_e + L.delta + L.omega + w3
        return (L.alpha + L.beta + w2, w2, w3)
    w3 = L.phi + L.psi + L.theta
    w2 = L.gamma_e + L.delta + w3
    return (L.alpha + L.beta + L.theta + w2, w2, w3)


def label_function(label: HighestVectorLabel):
    L = label
    norm = factorial(L.alpha) * factorial(L.beta) * factorial(L.gamma_e) * factorial(L.delta)
    if L.vtype == 1:
        exps = {"a1": L.alpha, "b1": L.beta, "a12": L.gamma_e, "b12": L.delta,
                "ab12": L.omega, "aab": L.phi, "abb": L.psi}
        norm *= factorial(L.omega)
    else:
        exps = {"a1": L.alpha, "b1": L.beta, "a12": L.gamma_e, "b12": L.delta,
                "abb": L.phi, "aab": L.psi, "aabb1213": L.theta}
        norm *= factorial(L.theta)
    return det_monomial(exps, Fraction(1, norm))


def lowest_function(label: HighestVectorLabel):
    """Lowest vector of a type-2 label's summand: (−1)^θ dual_map of the dual label's highest vector."""
    dual = label.dual()
    sign = -1 if label.theta % 2 else 1
    return sign * dual_map(label_function(dual))


# ───────────────────────────── multiplicities ─────────────────────────────


def multiplicity(wp: WeightPair, W: Sequence[int]) -> int:
    target = tuple(W)
    return sum(1 for L in enumerate_labels(wp) if label_weight(L) == target)


def decomposition(wp: WeightPair) -> Dict[Tuple[int, int, int], int]:
    return dict(sorted(Counter(label_weight(L) for L in enumerate_labels(wp)).items(),
                       reverse=True))


def tensor_character(wp: WeightPair) -> Counter:
    left = Counter(d.weight() for d in wp.w1.diagrams())
    right = Counter(d.weight() for d in wp.w2.diagrams())
    out: Counter = Counter()
    for w, c in left.items():
        for v, e in right.items():
            out[(w[0] + v[0], w[1] + v[1], w[2] + v[2])] += c * e
    return out


def brute_force_decomposition(wp: WeightPair) -> Dict[Tuple[int, int, int], int]:
    """Peels irreducible characters off the tensor character, highest weight first."""
    remaining = tensor_character(wp)
    found: Dict[Tuple[int, int, int], int] = {}
    while True:
        live = [w for w, c in remaining.items() if c]
        if not live:
            return found
        top = max(live)
        count = remaining[top]
        if count < 0:
            raise ArithmeticError(f"negative weight multiplicity at {top}")
        found[top] = count
        for d in iter_diagrams(*top):
            remaining[d.weight()] -= count


def brute_force_multiplicity(wp: WeightPair, W: Sequence[int]) -> int:
    return brute_force_decomposition(wp).get(tuple(W), 0)


def summand_dimension_total(wp: WeightPair) -> int:
    return sum(weyl_dimension(label_weight(L)) for L in enumerate_labels(wp))


# ───────────────────────────── general labels ─────────────────────────────


def general_function(omega: int, phi: int, psi: int, theta: int, wp: WeightPair):
    """Unnormalized a1^α b1^β a12^γ b12^δ (ab)^ω (abb)^φ (aab)^ψ (aabb)1213^θ."""
    m1, m2 = wp.w1.as_tuple()
    n1, n2 = wp.w2.as_tuple()
    exps = {
        "a1": m1 - m2 - omega - phi,
        "a12": m2 - psi - theta,
        "b1": n1 - n2 - omega - psi,
        "b12": n2 - phi - theta,
        "ab12": omega, "abb": phi, "aab": psi, "aabb1213": theta,
    }
    bad = [k for k, e in exps.items() if e < 0]
    if bad:
        raise InvalidLabel(f"f({omega},{phi},{psi},{theta}) has negative exponents for {', '.join(bad)}")
    return det_monomial(exps)


def expand_general_label(omega: int, phi: int, psi: int, theta: int,
                         wp: WeightPair) -> Dict[Tuple[int, int, int, int], int]:
    """Rewrites f(ω,φ,ψ,θ) until every key has ω = 0 or θ = 0.

    Uses (ab)·(aabb)1213 = (abb)·a12·b1 + (aab)·a1·b12.
    """
    general_function(omega, phi, psi, theta, wp)
    out: Counter = Counter()
    pending: Counter = Counter({(omega, phi, psi, theta): 1})
    while pending:
        key, c = pending.popitem()
        w, f, p, t = key
        if w == 0 or t == 0:
            out[key] += c
            continue
        pending[(w - 1, f + 1, p, t - 1)] += c
        pending[(w - 1, f, p + 1, t - 1)] += c
    return {k: v for k, v in sorted(out.items()) if v}


def general_key_label(key: Tuple[int, int, int, int], wp: WeightPair) -> Tuple[HighestVectorLabel, int]:
    """Basis label for f(ω,φ,ψ,θ) with ω = 0 or θ = 0, and the scalar f / label_function."""
    omega, phi, psi, theta = key
    if theta == 0:
        label = label_from_selector(1, omega, psi, phi, 0, wp)
        scale = factorial(label.omega)
    elif omega == 0:
        label = label_from_selector(2, 0, phi, psi, theta, wp)
        scale = factorial(label.theta)
    else:
        raise InvalidLabel(f"f{key} is not a basis function")
    scale *= (factorial(label.alpha) * factorial(label.beta)
              * factorial(label.gamma_e) * factorial(label.delta))
    return label, scale
