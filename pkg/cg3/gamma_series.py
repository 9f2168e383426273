# cg3/gamma_series.py
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from sympy import Rational as _SymRational, rf

from .exact_core import (
    factorial,
    from_qq,
    partial_derivative,
    poly_arith,
    poly_from_terms,
    poly_ring,
    reciprocal_gamma_int,
    substitute,
)

GAMMA_VARS = ("z1", "z2", "z3", "z4")


@dataclass(frozen=True)
class LatticeB:
    generator: tuple = (1, -1, -1, 1)


LATTICE_B = LatticeB()


@dataclass(frozen=True)
class GammaParams:
    """γ = (γ1, γ2, γ13, γ23); meaningful only modulo LATTICE_B."""

    g1: int
    g2: int
    g13: int
    g23: int = 0

    @classmethod
    def of(cls, values: Sequence[int]) -> "GammaParams":
        vals = tuple(int(v) for v in values)
        if len(vals) == 3:
            vals = vals + (0,)
        if len(vals) != 4:
            raise ValueError(f"γ needs 3 or 4 integers, got {len(vals)}")
        return cls(*vals)

    def as_tuple(self) -> tuple:
        return (self.g1, self.g2, self.g13, self.g23)

    def shifted(self, k: int) -> "GammaParams":
        b = LATTICE_B.generator
        return GammaParams(*(g + k * d for g, d in zip(self.as_tuple(), b)))

    def support(self) -> range:
        lo = max(-self.g1, -self.g23)
        hi = min(self.g2, self.g13)
        return range(lo, hi + 1)

    def is_empty(self) -> bool:
        return len(self.support()) == 0

    def normalized(self) -> "GammaParams":
        """The representative whose first surviving summand sits at k = 0."""
        sup = self.support()
        if not sup:
            return self
        return self.shifted(sup.start)

    def __str__(self) -> str:
        return "(" + ",".join(str(g) for g in self.as_tuple()) + ")"


@lru_cache(maxsize=4096)
def gamma_terms(gamma: GammaParams) -> tuple:
    """((exponent vector, coefficient), ...) of F_γ; empty when the series vanishes."""
    out = []
    for k in gamma.support():
        exps = gamma.shifted(k).as_tuple()
        coef = Fraction(1)
        for e in exps:
            coef *= reciprocal_gamma_int(e + 1)
        if coef:
            out.append((exps, coef))
    return tuple(out)


def expand_gamma_series(gamma: GammaParams, vars: Sequence[str] = GAMMA_VARS):
    if len(vars) != 4:
        raise ValueError("a Γ-series needs exactly four variables")
    return poly_from_terms(tuple(vars), dict(gamma_terms(gamma)))


@lru_cache(maxsize=4096)
def eval_at_one(gamma: GammaParams) -> Fraction:
    return sum((c for _, c in gamma_terms(gamma)), Fraction(0))


def closed_form_at_one(gamma: GammaParams) -> Optional[Fraction]:
    """Γ-quotient value of F_γ(1) for γ23 = 0; None where a Γ argument is nonpositive."""
    if gamma.g23 != 0:
        return None
    g1, g2, g3 = gamma.g1, gamma.g2, gamma.g13
    args = (g2 + 1, g3 + 1, g1 + g2 + 1, g1 + g3 + 1, g1 + g2 + g3 + 1, g1 + 1)
    if min(args) < 1:
        return None
    num = factorial(g1 + g2 + g3)
    den = factorial(g2) * factorial(g3) * factorial(g1 + g2) * factorial(g1 + g3)
    return Fraction(num, den)


def hypergeometric_at_one(gamma: GammaParams) -> Optional[Fraction]:
    """F_γ(1) through the terminating 2F1(-γ2, -γ13; γ1+1; 1) it reduces to for γ23 = 0."""
    if gamma.g23 != 0 or gamma.g1 < 0 or gamma.g2 < 0 or gamma.g13 < 0:
        return None
    g1, g2, g3 = gamma.g1, gamma.g2, gamma.g13
    total = _SymRational(0)
    for n in range(min(g2, g3) + 1):
        total += rf(-g2, n) * rf(-g3, n) / (rf(g1 + 1, n) * factorial(n))
    total /= factorial(g1) * factorial(g2) * factorial(g3)
    return Fraction(int(total.p), int(total.q))


def gkz_residual(gamma: GammaParams) -> tuple:
    """Box operator plus the three Euler operators applied to F_γ; all four vanish."""
    R = poly_ring(GAMMA_VARS)
    F = expand_gamma_series(gamma).set_ring(R)
    z1, z2, z3, z4 = R.gens
    d = {v: partial_derivative(F, v) for v in GAMMA_VARS}
    box = poly_arith(
        partial_derivative(d["z1"], "z4"), partial_derivative(d["z2"], "z3"), "sub"
    )
    g1, g2, g3, g4 = gamma.as_tuple()
    euler12 = z1 * d["z1"] + z2 * d["z2"] - (g1 + g2) * F
    euler13 = z1 * d["z1"] + z3 * d["z3"] - (g1 + g3) * F
    euler14 = z1 * d["z1"] - z4 * d["z4"] - (g1 - g4) * F
    return (box, euler12, euler13, euler14)


def restriction_check(gamma: GammaParams, point: Sequence) -> bool:
    """F_γ at z4 = z2·z3/z1 collapses to z1^γ1 z2^γ2 z3^γ13 F_γ(1)."""
    if gamma.g23 != 0:
        raise ValueError("restriction check needs γ23 = 0")
    z1, z2, z3 = (Fraction(p) for p in point)
    if z1 == 0:
        raise ValueError("z1 must be nonzero")
    if z2 == 0 or z3 == 0:
        raise ValueError("restriction point must have nonzero coordinates")
    z4 = z2 * z3 / z1
    lhs = substitute(expand_gamma_series(gamma), {"z1": z1, "z2": z2, "z3": z3, "z4": z4})
    rhs = z1 ** gamma.g1 * z2 ** gamma.g2 * z3 ** gamma.g13 * eval_at_one(gamma)
    return lhs == rhs


def coefficient_dict(gamma: GammaParams) -> dict:
    return {m: from_qq(c) for m, c in expand_gamma_series(gamma).terms()}
