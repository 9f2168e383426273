# cg3/oracle.py
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .cg_engine import CGTerm, DescentTriple, collect_terms, target_diagram
from .errors import InvalidDiagram, NotInSpan
from .exact_core import factorial, scale, solve_with_rank
from .gl3_model import (
    X_RING,
    GTDiagram,
    embed_matrix_entries,
    gt_vector,
    is_zero_function,
    lowering_apply,
    weight_of,
)
from .tensor_space import (
    HighestVectorLabel,
    WeightPair,
    label_function,
    lowest_function,
    validate_label,
)


@dataclass(frozen=True, order=True)
class ProductBasisIndex:
    diagram_u: GTDiagram
    diagram_v: GTDiagram


@dataclass
class ExpansionReport:
    terms: List[CGTerm]
    residual: object
    solver_stats: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.residual


@dataclass(frozen=True)
class Mismatch:
    diagram_u: GTDiagram
    diagram_v: GTDiagram
    formula: Optional[Fraction]
    oracle: Optional[Fraction]


def _apply_power(op: str, power: int, p):
    return scale(lowering_apply(op, power, p), Fraction(1, factorial(power)))


def tensor_gt_vector(label: HighestVectorLabel, d: DescentTriple, wp: Optional[WeightPair] = None):
    """The operator string of the descent applied to the label's extremal vector."""
    if wp is not None:
        validate_label(label, wp)
    if not target_diagram(label, d).is_valid():
        raise InvalidDiagram(f"descent {d} leaves the patterns of {label}")
    if label.vtype == 1:
        p = label_function(label)
        ops = ("nabla31", "E32", "E21")
    else:
        p = lowest_function(label)
        ops = ("nabla13", "E23", "E12")
    for op, power in zip(ops, d.as_tuple()):
        p = _apply_power(op, power, p)
    return p


@lru_cache(maxsize=8192)
def _product_image(du: GTDiagram, dv: GTDiagram):
    return embed_matrix_entries(gt_vector(du, "a") * gt_vector(dv, "b"))


def product_basis(wp: WeightPair, weight: Sequence[int]) -> List[ProductBasisIndex]:
    w = tuple(weight)
    out = []
    for du in wp.w1.diagrams():
        wu = du.weight()
        for dv in wp.w2.diagrams():
            wv = dv.weight()
            if (wu[0] + wv[0], wu[1] + wv[1], wu[2] + wv[2]) == w:
                out.append(ProductBasisIndex(du, dv))
    return out


def expand_in_product_basis(p, wp: WeightPair) -> ExpansionReport:
    if is_zero_function(p):
        return ExpansionReport([], X_RING.zero, {"unknowns": 0, "equations": 0, "rank": 0})
    basis = product_basis(wp, weight_of(p))
    images = [_product_image(b.diagram_u, b.diagram_v) for b in basis]
    target = embed_matrix_entries(p)
    coeffs, rank = solve_with_rank(target, images)
    residual = target
    for c, img in zip(coeffs, images):
        residual -= scale(img, c)
    if residual:
        raise NotInSpan("solved coefficients leave a nonzero residual")
    monomials = {m for img in images for m in img.keys()}
    terms = collect_terms(CGTerm(b.diagram_u, b.diagram_v, c) for b, c in zip(basis, coeffs))
    stats = {"unknowns": len(basis), "equations": len(monomials), "rank": rank}
    return ExpansionReport(terms, residual, stats)


def oracle_expansion(label: HighestVectorLabel, d: DescentTriple, wp: WeightPair) -> List[CGTerm]:
    validate_label(label, wp)
    if not target_diagram(label, d).is_valid():
        return []
    return expand_in_product_basis(tensor_gt_vector(label, d), wp).terms


def compare(formula: Sequence[CGTerm], oracle: Sequence[CGTerm]) -> List[Mismatch]:
    left: Dict[Tuple[GTDiagram, GTDiagram], Fraction] = {(t.diagram_u, t.diagram_v): t.coeff for t in formula}
    right: Dict[Tuple[GTDiagram, GTDiagram], Fraction] = {(t.diagram_u, t.diagram_v): t.coeff for t in oracle}
    out = []
    for key in sorted(set(left) | set(right)):
        a, b = left.get(key), right.get(key)
        if a != b:
            out.append(Mismatch(key[0], key[1], a, b))
    return out
