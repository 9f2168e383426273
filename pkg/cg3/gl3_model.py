# cg3/gl3_model.py
"""
Polynomial model of gl3 representations on functions of two 3x3 matrices
(factors `a` and `b`). Functions are written in an alphabet of twenty
determinant variables; that alphabet satisfies Plücker-type relations, so
equality is always decided after `embed_matrix_entries`, which maps into
the free polynomial ring of the twelve top-row matrix entries.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import InvalidDiagram, NotAWeightVector, SingularInverse
from .exact_core import factorial, poly_ring, to_qq
from .gamma_series import GammaParams, gamma_terms

COLUMNS = (1, 2, 3)
PAIRS = ((1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class DetVariable:
    """One determinant variable.

    `kind` is one of single, pair, ab, aab, abb, aabb. For aabb the two
    column pairs are stored separately; the variable is
    a_P·b_P' − a_P'·b_P, antisymmetric under swapping P and P'.
    """

    name: str
    factor: str  # "a", "b" or "ab"
    kind: str
    columns: Tuple[Tuple[int, ...], ...]

    @property
    def weight(self) -> Tuple[int, int, int]:
        flat = [c for block in self.columns for c in block]
        return tuple(flat.count(i) for i in COLUMNS)


def _alphabet() -> List[DetVariable]:
    out: List[DetVariable] = []
    for f in ("a", "b"):
        for i in COLUMNS:
            out.append(DetVariable(f"{f}{i}", f, "single", ((i,),)))
        for i, j in PAIRS:
            out.append(DetVariable(f"{f}{i}{j}", f, "pair", ((i, j),)))
    for i, j in PAIRS:
        out.append(DetVariable(f"ab{i}{j}", "ab", "ab", ((i, j),)))
    out.append(DetVariable("aab", "ab", "aab", (COLUMNS,)))
    out.append(DetVariable("abb", "ab", "abb", (COLUMNS,)))
    for p, q in combinations(PAIRS, 2):
        name = "aabb" + "".join(str(c) for c in p + q)
        out.append(DetVariable(name, "ab", "aabb", (p, q)))
    return out


DET_VARIABLES = tuple(_alphabet())
DET_NAMES = tuple(v.name for v in DET_VARIABLES)
DET_INDEX = {n: i for i, n in enumerate(DET_NAMES)}
DET_RING = poly_ring(DET_NAMES)
_BY_SHAPE = {(v.factor, v.kind, v.columns): v for v in DET_VARIABLES}

X_NAMES = tuple(f"x{f}{r}{c}" for f in ("a", "b") for r in (1, 2) for c in COLUMNS)
X_RING = poly_ring(X_NAMES)

# DetPolynomial is a PolyElement of DET_RING.
DetPolynomial = type(DET_RING.zero)


def det_var(name: str):
    return DET_RING.gens[DET_INDEX[name]]


def det_monomial(exponents: Dict[str, int], coeff=1):
    """coeff · Π name^e as a DetPolynomial."""
    mono = [0] * len(DET_NAMES)
    for name, e in exponents.items():
        if e < 0:
            raise ValueError(f"negative exponent for {name}")
        mono[DET_INDEX[name]] += e
    if not coeff:
        return DET_RING.zero
    return DET_RING.from_dict({tuple(mono): to_qq(coeff)})


def as_det(p):
    if p.ring == DET_RING:
        return p
    return p.set_ring(DET_RING)


# ───────────────────────────── matrix-entry embedding ─────────────────────────────


def _x(f: str, r: int, c: int):
    return X_RING.gens[X_NAMES.index(f"x{f}{r}{c}")]


def _minor(f: str, i: int, j: int):
    return _x(f, 1, i) * _x(f, 2, j) - _x(f, 1, j) * _x(f, 2, i)


def _embed_variable(v: DetVariable):
    if v.kind == "single":
        return _x(v.factor, 1, v.columns[0][0])
    if v.kind == "pair":
        return _minor(v.factor, *v.columns[0])
    if v.kind == "ab":
        i, j = v.columns[0]
        return _x("a", 1, i) * _x("b", 1, j) - _x("a", 1, j) * _x("b", 1, i)
    if v.kind == "aab":
        # rows a1, a2, b1; expanded along the b row
        return (_x("b", 1, 1) * _minor("a", 2, 3) - _x("b", 1, 2) * _minor("a", 1, 3)
                + _x("b", 1, 3) * _minor("a", 1, 2))
    if v.kind == "abb":
        return (_x("a", 1, 1) * _minor("b", 2, 3) - _x("a", 1, 2) * _minor("b", 1, 3)
                + _x("a", 1, 3) * _minor("b", 1, 2))
    p, q = v.columns
    return _minor("a", *p) * _minor("b", *q) - _minor("a", *q) * _minor("b", *p)


_EMBED_IMAGES = tuple(_embed_variable(v) for v in DET_VARIABLES)


def substitute_variables(p, images: Sequence, target) -> object:
    """Ring map sending the i-th generator of p's ring to images[i] in `target`."""
    p = as_det(p)
    out = target.zero
    powers: Dict[Tuple[int, int], object] = {}
    for mono, coeff in p.terms():
        term = target(coeff)
        for idx, e in enumerate(mono):
            if not e:
                continue
            key = (idx, e)
            if key not in powers:
                powers[key] = images[idx] ** e
            term = term * powers[key]
        out += term
    return out


def embed_matrix_entries(p):
    return substitute_variables(p, _EMBED_IMAGES, X_RING)


def is_zero_function(p) -> bool:
    return not p or not embed_matrix_entries(p)


def det_equal(p, q) -> bool:
    return is_zero_function(as_det(p) - as_det(q))


# ───────────────────────────── generators ─────────────────────────────


def _sort_block(cols: List[int]) -> Tuple[int, Tuple[int, ...]]:
    sign = 1
    cols = list(cols)
    for x in range(len(cols)):
        for y in range(x + 1, len(cols)):
            if cols[x] > cols[y]:
                sign = -sign
    return sign, tuple(sorted(cols))


def _shift_block(block: Tuple[int, ...], i: int, j: int) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Column j replaced by i inside an alternating block; None when it vanishes."""
    if j not in block:
        return None
    if i != j and i in block:
        return None
    return _sort_block([i if c == j else c for c in block])


def _act_on_variable(v: DetVariable, i: int, j: int):
    if v.kind != "aabb":
        shifted = _shift_block(v.columns[0], i, j)
        if shifted is None:
            return DET_RING.zero
        sign, cols = shifted
        return sign * det_var(_BY_SHAPE[(v.factor, v.kind, (cols,))].name)
    out = DET_RING.zero
    p, q = v.columns
    for which in (0, 1):
        shifted = _shift_block((p, q)[which], i, j)
        if shifted is None:
            continue
        sign, cols = shifted
        new = (cols, q) if which == 0 else (p, cols)
        if new[0] == new[1]:
            continue
        if new[0] > new[1]:
            new, sign = (new[1], new[0]), -sign
        out += sign * det_var(_BY_SHAPE[("ab", "aabb", new)].name)
    return out


@lru_cache(maxsize=None)
def _action_table(i: int, j: int) -> tuple:
    table = []
    for idx, v in enumerate(DET_VARIABLES):
        image = _act_on_variable(v, i, j)
        if image:
            table.append((idx, image))
    return tuple(table)


def generator_action(i: int, j: int, p):
    """E_ij as a derivation: Σ_v ∂p/∂v · E_ij(v)."""
    if i not in COLUMNS or j not in COLUMNS:
        raise ValueError(f"generator indices must lie in 1..3, got E{i}{j}")
    p = as_det(p)
    out = DET_RING.zero
    if not p:
        return out
    gens = DET_RING.gens
    for idx, image in _action_table(i, j):
        d = p.diff(gens[idx])
        if d:
            out += d * image
    return out


def left_shift(i: int, j: int, P):
    """Σ_r x_{r,i} ∂/∂x_{r,j} over both factors, on matrix-entry polynomials."""
    out = X_RING.zero
    for f in ("a", "b"):
        for r in (1, 2):
            d = P.diff(_x(f, r, j))
            if d:
                out += _x(f, r, i) * d
    return out


# ───────────────────────────── weights ─────────────────────────────

_VAR_WEIGHTS = tuple(v.weight for v in DET_VARIABLES)


def monomial_weight(mono: Sequence[int]) -> Tuple[int, int, int]:
    w = [0, 0, 0]
    for e, vw in zip(mono, _VAR_WEIGHTS):
        if e:
            for c in range(3):
                w[c] += e * vw[c]
    return tuple(w)


def split_by_weight(p) -> Dict[Tuple[int, int, int], object]:
    groups: Dict[Tuple[int, int, int], dict] = {}
    for mono, coeff in as_det(p).terms():
        groups.setdefault(monomial_weight(mono), {})[mono] = coeff
    return {w: DET_RING.from_dict(terms) for w, terms in groups.items()}


def weight_of(p) -> Tuple[int, int, int]:
    if not p:
        raise ValueError("the zero polynomial has no weight")
    live = [w for w, part in split_by_weight(p).items() if not is_zero_function(part)]
    if not live:
        raise ValueError("polynomial vanishes as a function")
    if len(live) > 1:
        raise NotAWeightVector(f"components of weights {sorted(live)}")
    return live[0]


def _spectral_inverse(q, eigen: Callable[[Tuple[int, int, int]], int]):
    out = DET_RING.zero
    for w, part in split_by_weight(q).items():
        value = eigen(w)
        if value == 0:
            if is_zero_function(part):
                continue
            raise SingularInverse(f"inverse factor vanishes on weight {w}")
        out += part * to_qq(Fraction(1, value))
    return out


def nabla31(p):
    """E31 + (E11 − E22 + 1)⁻¹ E32 E21."""
    corr = generator_action(3, 2, generator_action(2, 1, p))
    return generator_action(3, 1, p) + _spectral_inverse(corr, lambda w: w[0] - w[1] + 1)


def nabla13(p):
    """−E13 + (−E11 + E22 + 1)⁻¹ E23 E12; the image of nabla31 under dual_map."""
    corr = generator_action(2, 3, generator_action(1, 2, p))
    return -generator_action(1, 3, p) + _spectral_inverse(corr, lambda w: -w[0] + w[1] + 1)


_STEPS = {
    "nabla31": nabla31,
    "E32": lambda p: generator_action(3, 2, p),
    "E21": lambda p: generator_action(2, 1, p),
    "nabla13": nabla13,
    "E23": lambda p: generator_action(2, 3, p),
    "E12": lambda p: generator_action(1, 2, p),
}


def lowering_apply(op: str, power: int, p):
    """op^power applied to p; division by power! is left to callers."""
    try:
        step = _STEPS[op]
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None
    if power < 0:
        raise ValueError("operator power must be nonnegative")
    p = as_det(p)
    for _ in range(power):
        if not p:
            break
        p = step(p)
    return p


# ───────────────────────────── highest weights and diagrams ─────────────────────────────


@dataclass(frozen=True, order=True)
class GTDiagram:
    m1: int
    m2: int
    m3: int
    k1: int
    k2: int
    s: int

    def is_valid(self) -> bool:
        return (self.m1 >= self.k1 >= self.m2 >= self.k2 >= self.m3
                and self.k1 >= self.s >= self.k2)

    def validate(self) -> "GTDiagram":
        if not self.is_valid():
            raise InvalidDiagram(f"diagram {self.as_list()} violates betweenness")
        return self

    def as_list(self) -> List[int]:
        return [self.m1, self.m2, self.m3, self.k1, self.k2, self.s]

    @property
    def top(self) -> Tuple[int, int, int]:
        return (self.m1, self.m2, self.m3)

    def weight(self) -> Tuple[int, int, int]:
        return (self.s, self.k1 + self.k2 - self.s,
                self.m1 + self.m2 + self.m3 - self.k1 - self.k2)

    def gamma(self) -> GammaParams:
        return GammaParams(self.s - self.m2, self.k1 - self.s, self.m2 - self.k2, 0)

    def flip(self, c: Optional[int] = None) -> "GTDiagram":
        """Contragredient pattern: every entry x becomes c − x, rows reversed."""
        c = self.m1 if c is None else c
        return GTDiagram(c - self.m3, c - self.m2, c - self.m1,
                         c - self.k2, c - self.k1, c - self.s)

    def dual_sign(self) -> int:
        """Sign with dual_map(gt_vector(d)) == dual_sign · gt_vector(d.flip())."""
        return -1 if ((self.k1 - self.s) + (self.m2 - self.k2)) % 2 else 1

    def __str__(self) -> str:
        return f"({self.m1},{self.m2},{self.m3};{self.k1},{self.k2};{self.s})"


@dataclass(frozen=True, order=True)
class HighestWeight:
    m1: int
    m2: int

    def __post_init__(self):
        if not (self.m1 >= self.m2 >= 0):
            raise ValueError(f"highest weight needs m1 >= m2 >= 0, got ({self.m1},{self.m2})")

    def as_tuple(self) -> Tuple[int, int]:
        return (self.m1, self.m2)

    def dual(self) -> "HighestWeight":
        return HighestWeight(self.m1, self.m1 - self.m2)

    def dim(self) -> int:
        return weyl_dimension((self.m1, self.m2, 0))

    def top_diagram(self) -> GTDiagram:
        return GTDiagram(self.m1, self.m2, 0, self.m1, self.m2, self.m1)

    def diagrams(self) -> List[GTDiagram]:
        return list(iter_diagrams(self.m1, self.m2, 0))


def iter_diagrams(m1: int, m2: int, m3: int) -> Iterator[GTDiagram]:
    for k1 in range(m2, m1 + 1):
        for k2 in range(m3, m2 + 1):
            for s in range(k2, k1 + 1):
                yield GTDiagram(m1, m2, m3, k1, k2, s)


def weyl_dimension(top: Sequence[int]) -> int:
    a = top[0] - top[1]
    b = top[1] - top[2]
    return (1 + a) * (1 + b) * (2 + a + b) // 2


def descend_case1(hw: Sequence[int], T1: int, T2: int, S: int) -> GTDiagram:
    """Pattern reached from the top by ∇31^T1, E32^T2, E21^S."""
    m1, m2, m3 = hw
    k1 = m1 - T1
    return GTDiagram(m1, m2, m3, k1, m2 - T2, k1 - S)


def ascend_case2(hw: Sequence[int], T1: int, T2: int, S: int) -> GTDiagram:
    """Pattern reached from the bottom by ∇13^T1, E23^T2, E12^S."""
    m1, m2, m3 = hw
    k2 = m3 + T1
    return GTDiagram(m1, m2, m3, m2 + T2, k2, k2 + S)


def chain_scale(m1: int, m2: int, T1: int) -> Fraction:
    """∇31^T1/T1! on the highest vector equals this multiple of the GT vector."""
    A = m1 - m2
    if T1 > A:
        return Fraction(0)
    return Fraction(factorial(m1 + 1) * factorial(A - T1),
                    factorial(m1 + 1 - T1) * factorial(A))


# ───────────────────────────── GT vectors ─────────────────────────────


def _gt_names(factor: str) -> Tuple[str, ...]:
    if factor not in ("a", "b"):
        raise ValueError(f"factor must be 'a' or 'b', got {factor!r}")
    f = factor
    return (f"{f}1", f"{f}2", f"{f}13", f"{f}23")


@lru_cache(maxsize=2048)
def _gt_vector_cached(d: GTDiagram, factor: str):
    d.validate()
    if d.m3 != 0:
        raise InvalidDiagram(f"GT vectors are realized for m3 = 0 only, got {d}")
    i = d.m1 - d.k1
    j = d.k2
    pre = Fraction(1, factorial(i) * factorial(j))
    z = [DET_INDEX[n] for n in _gt_names(factor)]
    i3 = DET_INDEX[f"{factor}3"]
    i12 = DET_INDEX[f"{factor}12"]
    terms = {}
    for exps, coeff in gamma_terms(d.gamma()):
        mono = [0] * len(DET_NAMES)
        mono[i3] = i
        mono[i12] = j
        for idx, e in zip(z, exps):
            mono[idx] += e
        terms[tuple(mono)] = to_qq(pre * coeff)
    return DET_RING.from_dict(terms)


def gamma_series_poly(gamma: GammaParams, factor: str = "a"):
    """F_γ(f1, f2, f13, f23) for the factor f as a DetPolynomial."""
    z = [DET_INDEX[n] for n in _gt_names(factor)]
    terms = {}
    for exps, coeff in gamma_terms(gamma):
        mono = [0] * len(DET_NAMES)
        for idx, e in zip(z, exps):
            mono[idx] = e
        terms[tuple(mono)] = to_qq(coeff)
    return DET_RING.from_dict(terms)


def plucker_w(factor: str = "a"):
    """W = f1·f23 − f2·f13, equal to −f3·f12 as a function."""
    f = factor
    return det_var(f"{f}1") * det_var(f"{f}23") - det_var(f"{f}2") * det_var(f"{f}13")


def gt_vector(d: GTDiagram, factor: str = "a"):
    """a3^(m1−k1)/(m1−k1)! · a12^k2/k2! · F_γ(a1, a2, a13, a23)."""
    return _gt_vector_cached(d, factor).copy()


def highest_vector(hw: HighestWeight, factor: str = "a"):
    return gt_vector(hw.top_diagram(), factor)


# ───────────────────────────── contragredient map ─────────────────────────────


def _dual_images() -> tuple:
    table = {}
    for f in ("a", "b"):
        table[f"{f}1"] = (1, f"{f}23")
        table[f"{f}2"] = (-1, f"{f}13")
        table[f"{f}3"] = (1, f"{f}12")
        table[f"{f}12"] = (1, f"{f}3")
        table[f"{f}13"] = (-1, f"{f}2")
        table[f"{f}23"] = (1, f"{f}1")
    table["ab12"] = (1, "aabb1323")
    table["aabb1323"] = (1, "ab12")
    table["ab13"] = (-1, "aabb1223")
    table["aabb1223"] = (-1, "ab13")
    table["ab23"] = (1, "aabb1213")
    table["aabb1213"] = (1, "ab23")
    table["aab"] = (1, "abb")
    table["abb"] = (1, "aab")
    return tuple(table[n][0] * det_var(table[n][1]) for n in DET_NAMES)


_DUAL_IMAGES = _dual_images()


def dual_map(p):
    """Contragredient substitution; an involution on the determinant alphabet."""
    return substitute_variables(p, _DUAL_IMAGES, DET_RING)
