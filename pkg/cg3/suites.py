# cg3/suites.py
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Callable, Dict, Iterator, List, Optional, Sequence

from .cg_engine import (
    cg_expansion,
    iter_descents,
    sign_rule_counterexamples,
    target_diagram,
)
from .contiguity import (
    check_relation,
    d_coeff_identity,
    f13_decomposition,
    pre1_check,
)
from .errors import Cg3Error, SingularInverse
from .exact_core import factorial, matrix_rank, partial_derivative, scale
from .gamma_series import (
    GAMMA_VARS,
    GammaParams,
    closed_form_at_one,
    eval_at_one,
    expand_gamma_series,
    gamma_terms,
    gkz_residual,
    hypergeometric_at_one,
    restriction_check,
)
from .gl3_model import (
    COLUMNS,
    DET_NAMES,
    DET_RING,
    HighestWeight,
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
    left_shift,
    lowering_apply,
    nabla13,
    nabla31,
    weight_of,
)
from .oracle import compare, oracle_expansion, tensor_gt_vector
from .tensor_space import (
    WeightPair,
    brute_force_decomposition,
    decomposition,
    enumerate_labels,
    expand_general_label,
    general_function,
    general_key_label,
    label_function,
    label_weight,
    lowest_function,
    summand_dimension_total,
)
from .util import Progress, Step, max_parallelism, tell


@dataclass
class SuiteReport:
    name: str
    checks: int = 0
    failures: List[Dict[str, str]] = field(default_factory=list)
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, passed: bool, what: str, case: object, detail: str = "") -> None:
        self.checks += 1
        if not passed:
            self.failures.append({"check": what, "case": str(case), "detail": detail})

    def merge(self, other: "SuiteReport") -> None:
        self.checks += other.checks
        self.failures.extend(other.failures)
        for k, v in other.notes.items():
            if isinstance(v, int) and isinstance(self.notes.get(k, 0), int):
                self.notes[k] = self.notes.get(k, 0) + v
            else:
                self.notes.setdefault(k, v)

    def to_json(self) -> dict:
        return {"suite": self.name, "checks": self.checks, "ok": self.ok,
                "failures": self.failures, "notes": self.notes}


def iter_weight_pairs(max_weight: int) -> Iterator[WeightPair]:
    for m1 in range(max_weight + 1):
        for m2 in range(m1 + 1):
            for n1 in range(max_weight + 1):
                for n2 in range(n1 + 1):
                    yield WeightPair.of((m1, m2), (n1, n2))


# ───────────────────────────── Γ-series ─────────────────────────────


def run_gamma(max_weight: int, say: Optional[Step] = None) -> SuiteReport:
    rep = SuiteReport("gamma")
    hi = 4
    grid = [GammaParams(*g, g23) for g in product(range(hi + 1), repeat=3) for g23 in (0, 1)]
    tell(say, f"Γ-series: {len(grid)} parameter vectors")
    for gamma in grid:
        rep.check(all(not r for r in gkz_residual(gamma)), "gkz", gamma)
        F = expand_gamma_series(gamma)
        for idx, var in enumerate(GAMMA_VARS):
            lowered = list(gamma.as_tuple())
            lowered[idx] -= 1
            rep.check(partial_derivative(F, var) == expand_gamma_series(GammaParams(*lowered)),
                      "derivative", (gamma, var))
        if gamma.g23 == 0:
            closed = closed_form_at_one(gamma)
            if closed is not None:
                rep.check(closed == eval_at_one(gamma), "closed-form", gamma)
            rep.check(hypergeometric_at_one(gamma) == eval_at_one(gamma), "2F1", gamma)
            rep.check(restriction_check(gamma, (2, 3, 5)), "restriction", gamma)
    for g in product(range(-3, 6), repeat=4):
        gamma = GammaParams(*g)
        base = gamma_terms(gamma)
        for k in (-2, -1, 1, 2):
            rep.check(gamma_terms(gamma.shifted(k)) == base, "shift", (gamma, k))
    return rep


# ───────────────────────────── polynomial model ─────────────────────────────


def _try(fn):
    try:
        return fn()
    except SingularInverse:
        return None


def run_model(max_weight: int, say: Optional[Step] = None) -> SuiteReport:
    rep = SuiteReport("model")
    for f in ("a", "b"):
        pl = (det_var(f"{f}1") * det_var(f"{f}23") - det_var(f"{f}2") * det_var(f"{f}13")
              + det_var(f"{f}3") * det_var(f"{f}12"))
        rep.check(not embed_matrix_entries(pl), "plucker", f)

    tell(say, "generators against the matrix-entry derivation")
    gens = DET_RING.gens
    for i, j in product(COLUMNS, repeat=2):
        for name, v in zip(DET_NAMES, gens):
            lhs = embed_matrix_entries(generator_action(i, j, v))
            rep.check(lhs == left_shift(i, j, embed_matrix_entries(v)), "left-shift", (i, j, name))
    for (i, j), (k, l) in product(product(COLUMNS, repeat=2), repeat=2):
        for name, v in zip(DET_NAMES, gens):
            lhs = (generator_action(i, j, generator_action(k, l, v))
                   - generator_action(k, l, generator_action(i, j, v)))
            rhs = DET_RING.zero
            if j == k:
                rhs += generator_action(i, l, v)
            if l == i:
                rhs -= generator_action(k, j, v)
            rep.check(det_equal(lhs, rhs), "commutator", (i, j, k, l, name))
    for i, j in product(COLUMNS, repeat=2):
        if i == j:
            continue
        for name, v in zip(DET_NAMES, gens):
            rep.check(det_equal(dual_map(generator_action(i, j, v)),
                                -generator_action(j, i, dual_map(v))), "dual-conjugation", (i, j, name))
    tell(say, "∇31 against ∇13 through the dual map")
    for degree in (1, 2, 3):
        for idx in combinations_with_replacement(range(len(gens)), degree):
            mono = DET_RING.one
            for a in idx:
                mono *= gens[a]
            case = tuple(DET_NAMES[a] for a in idx)
            lhs, rhs = _try(lambda: dual_map(nabla31(mono))), _try(lambda: nabla13(dual_map(mono)))
            if lhs is None or rhs is None:
                rep.check(lhs is rhs, "dual-nabla", case, "one side singular")
            else:
                rep.check(det_equal(lhs, rhs), "dual-nabla", case)

    top = max(max_weight, 1) + 1
    for m1 in range(top + 1):
        for m2 in range(m1 + 1):
            hw = HighestWeight(m1, m2)
            stva = det_monomial({"a1": m1 - m2, "a12": m2},
                                Fraction(1, factorial(m1 - m2) * factorial(m2)))
            rep.check(det_equal(highest_vector(hw), stva), "highest-vector", hw)
            for i, j in ((1, 2), (1, 3), (2, 3)):
                rep.check(is_zero_function(generator_action(i, j, stva)), "annihilation", (hw, i, j))
            for d in hw.diagrams():
                g = gt_vector(d)
                rep.check(weight_of(g) == d.weight(), "gt-weight", d)
                rep.check(det_equal(dual_map(g), d.dual_sign() * gt_vector(d.flip())), "gt-dual", d)
            tell(say, f"lowering chains for ({m1},{m2},0)")
            for d in hw.diagrams():
                T1, T2, S = m1 - d.k1, m2 - d.k2, d.k1 - d.s
                rep.check(descend_case1((m1, m2, 0), T1, T2, S) == d, "descent-pattern", d)
                v = stva
                for op, power in (("nabla31", T1), ("E32", T2), ("E21", S)):
                    v = scale(lowering_apply(op, power, v), Fraction(1, factorial(power)))
                expect = scale(gt_vector(d), chain_scale(m1, m2, T1))
                rep.check(det_equal(v, expect), "gt-chain", d)
    return rep


# ───────────────────────────── highest vectors ─────────────────────────────


def run_labels(max_weight: int, say: Optional[Step] = None) -> SuiteReport:
    rep = SuiteReport("labels")
    for wp in iter_weight_pairs(max_weight):
        labels = enumerate_labels(wp)
        funcs = [label_function(L) for L in labels]
        for L, f in zip(labels, funcs):
            for i, j in ((1, 2), (1, 3), (2, 3)):
                rep.check(is_zero_function(generator_action(i, j, f)), "raising-annihilation", (wp, L, i, j))
            rep.check(weight_of(f) == label_weight(L), "label-weight", (wp, L))
            if L.vtype == 2:
                low = lowest_function(L)
                for i, j in ((2, 1), (3, 1), (3, 2)):
                    rep.check(is_zero_function(generator_action(i, j, low)), "lowering-annihilation", (wp, L, i, j))
        rank = matrix_rank([embed_matrix_entries(f) for f in funcs])
        rep.check(rank == len(funcs), "independence", wp, f"rank {rank} of {len(funcs)}")
        rep.check(summand_dimension_total(wp) == wp.w1.dim() * wp.w2.dim(), "completeness", wp)
        rep.check(decomposition(wp) == brute_force_decomposition(wp),
                  "multiplicity", wp)
        m1, m2 = wp.w1.as_tuple()
        n1, n2 = wp.w2.as_tuple()
        for theta in range(1, min(m2, n2) + 1):
            for omega in range(1, min(m1 - m2, n1 - n2) + 1):
                try:
                    lhs = general_function(omega, 0, 0, theta, wp)
                except Cg3Error:
                    continue
                rhs = DET_RING.zero
                for key, c in expand_general_label(omega, 0, 0, theta, wp).items():
                    label, scale = general_key_label(key, wp)
                    rhs += label_function(label) * (c * scale)
                rep.check(det_equal(lhs, rhs), "general-label", (wp, omega, theta))
    return rep


# ───────────────────────────── relations ─────────────────────────────


# largest entry of u, n, k2, k and γ in the relation grids
RELATION_GRID = 3


def _literal_fails(which: int, *inputs) -> int:
    try:
        return int(not check_relation(which, *inputs, literal=True))
    except (Cg3Error, ValueError, ZeroDivisionError):
        return 1


def run_relations(max_weight: int, say: Optional[Step] = None) -> SuiteReport:
    rep = SuiteReport("relations")
    bound = RELATION_GRID
    literal_failures: Dict[str, int] = {"rel1": 0, "rel2": 0, "rel3": 0}
    gammas = [GammaParams(*g, 0) for g in product(range(bound + 1), repeat=3)]
    tell(say, "rel1")
    for u in range(bound + 1):
        for gamma in gammas:
            rep.check(check_relation(1, u, gamma), "rel1", (u, gamma))
            literal_failures["rel1"] += _literal_fails(1, u, gamma)
    tell(say, "rel2")
    for lam, mu, omega in product(range(5), repeat=3):
        if lam + mu + omega > min(4, max_weight + 2):
            continue
        rep.check(check_relation(2, lam, mu, omega), "rel2", (lam, mu, omega))
        literal_failures["rel2"] += _literal_fails(2, lam, mu, omega)
    tell(say, "rel3")
    for n in range(bound + 1):
        for k2 in range(bound + 1):
            for A in range(3):
                for gamma in gammas:
                    rep.check(check_relation(3, n, gamma, A, k2), "rel3", (n, gamma, A, k2))
                    literal_failures["rel3"] += _literal_fails(3, n, gamma, A, k2)
    for k in range(bound + 1):
        for gamma in gammas:
            rep.check(pre1_check(k, gamma), "pre1", (k, gamma))
    for gamma in gammas:
        try:
            f13_decomposition(gamma)
            rep.check(True, "f13", gamma)
        except Cg3Error as e:
            rep.check(False, "f13", gamma, str(e))
    tell(say, "∇31 powers")
    for wp in iter_weight_pairs(max_weight):
        for L in enumerate_labels(wp):
            if L.vtype != 1:
                continue
            h = L.alpha + L.beta + L.gamma_e + L.delta + L.omega
            gap = L.alpha + L.beta
            for n in range(1, min(3, gap) + 1):
                if h < n + 1:
                    continue
                try:
                    rep.check(d_coeff_identity(label_function(L), h, gap, n), "d-coefficient", (wp, L, n))
                except SingularInverse as e:
                    rep.check(False, "d-coefficient", (wp, L, n), str(e))
    rep.notes["literal_reading_failures"] = literal_failures
    return rep


# ───────────────────────────── CG equivalence ─────────────────────────────


def _cg_cell(wp: WeightPair) -> SuiteReport:
    rep = SuiteReport("cg")
    literal = 0
    stacked = []
    for L in enumerate_labels(wp):
        for d in iter_descents(L):
            try:
                oracle = oracle_expansion(L, d, wp)
                formula = cg_expansion(L, d, wp)
            except Cg3Error as e:
                rep.check(False, "cg-equivalence", (wp, L, d), f"{type(e).__name__}: {e}")
                continue
            diff = compare(formula, oracle)
            rep.check(not diff, "cg-equivalence", (wp, L, d),
                      "; ".join(f"{m.diagram_u}x{m.diagram_v}: {m.formula} vs {m.oracle}" for m in diff))
            target = target_diagram(L, d).weight()
            for t in formula:
                wu, wv = t.diagram_u.weight(), t.diagram_v.weight()
                rep.check(tuple(a + b for a, b in zip(wu, wv)) == target, "weight-bookkeeping", (wp, L, d))
            try:
                literal += bool(compare(cg_expansion(L, d, wp, literal=True), oracle))
            except (Cg3Error, ValueError, ZeroDivisionError):
                literal += 1
            if L.vtype == 2:
                bad = sign_rule_counterexamples(L, d, wp)
                rep.check(not bad, "sign-rule", (wp, L, d), f"{len(bad)} counterexamples")
            stacked.append(embed_matrix_entries(tensor_gt_vector(L, d)))
    rank = matrix_rank(stacked)
    rep.check(rank == wp.w1.dim() * wp.w2.dim(), "oracle-completeness", wp, f"rank {rank}")
    rep.notes["literal_reading_mismatches"] = literal
    return rep


def run_cg(max_weight: int, say: Optional[Step] = None, workers: Optional[int] = None) -> SuiteReport:
    rep = SuiteReport("cg")
    cells = list(iter_weight_pairs(max_weight))
    workers = max_parallelism() if workers is None else max(1, workers)
    prog = Progress(say, len(cells))
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for n, cell in enumerate(pool.map(_cg_cell, cells), start=1):
                rep.merge(cell)
                prog.step(f"cg {n}/{len(cells)} weight pairs")
    else:
        for wp in cells:
            rep.merge(_cg_cell(wp))
            prog.step(f"cg {wp}")
    return rep


SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "gamma": run_gamma,
    "model": run_model,
    "labels": run_labels,
    "relations": run_relations,
    "cg": run_cg,
}


def run_suites(names: Sequence[str], max_weight: int, say: Optional[Step] = None) -> List[SuiteReport]:
    out = []
    for name in names:
        tell(say, f"suite {name}")
        out.append(SUITES[name](max_weight, say))
    return out
