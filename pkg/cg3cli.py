#!/usr/bin/env python3
from __future__ import annotations
import argparse, csv, io, json, re, sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from cg3.cg_engine import CGTerm, DescentTriple, cg_expansion, iter_descents, target_diagram
from cg3.errors import Cg3Error
from cg3.gl3_model import weyl_dimension
from cg3.oracle import compare, oracle_expansion
from cg3.suites import SUITES, run_suites
from cg3.tensor_space import (
    HighestVectorLabel,
    WeightPair,
    decomposition,
    enumerate_labels,
    label_from_selector,
    label_weight,
)
from cg3.util import verify_max_weight

MODES = ("formula", "oracle", "both")

# --- argument types ----------------------------------------------------------

def _int_list(n: int) -> Callable[[str], Tuple[int, ...]]:
    def parse(text: str) -> Tuple[int, ...]:
        parts = [p.strip() for p in text.split(",")]
        try:
            vals = tuple(int(p) for p in parts)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated integers, got {text!r}") from None
        if len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated integers, got {text!r}")
        return vals
    return parse

# --- progress bar (stderr; stdout carries the payload) -----------------------

def _render_bar(pct: int, msg: str) -> None:
    pct = max(0, min(100, int(pct)))
    bar_len = 32
    filled = int(bar_len * pct / 100)
    bar = "#" * filled + "." * (bar_len - filled)
    sys.stderr.write(f"\r[{bar}] {pct:3d}% {msg[:60]:<60}")
    sys.stderr.flush()
    if pct == 100:
        sys.stderr.write("\n")
        sys.stderr.flush()

def _progress_sink() -> Callable[[str], None]:
    """Parses 'NN% message' lines to draw a single-line progress bar."""
    pat = re.compile(r"^(\d{1,3})%[ ]+(.*)$")
    def sink(m: str) -> None:
        m = m.rstrip("\n")
        mo = pat.match(m)
        if mo:
            _render_bar(int(mo.group(1)), mo.group(2))
        else:
            sys.stderr.write("\n" + m + "\n")
            sys.stderr.flush()
    return sink

# --- wire format ---------------------------------------------------------------

@dataclass(frozen=True)
class CGQuery:
    wp: WeightPair
    label: Optional[HighestVectorLabel]
    descent: Optional[DescentTriple]
    mode: str = "both"

    def to_json(self) -> dict:
        out = {"w1": list(self.wp.w1.as_tuple()), "w2": list(self.wp.w2.as_tuple()), "mode": self.mode}
        if self.label is not None:
            out["label"] = list(self.label.selector())
        if self.descent is not None:
            out["descent"] = list(self.descent.as_tuple())
        return out

def fraction_json(c: Fraction) -> dict:
    return {"num": str(c.numerator), "den": str(c.denominator)}

def term_json(t: CGTerm) -> dict:
    return {"diagram_u": t.diagram_u.as_list(), "diagram_v": t.diagram_v.as_list(),
            "coefficient": fraction_json(t.coeff)}

def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)

def _emit(text: str, out: Optional[str] = None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, flush=True)

def _terms_csv(rows: Sequence[Tuple[Sequence[int], Sequence[int], CGTerm]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "descent", "diagram_u", "diagram_v", "num", "den"])
    for sel, desc, t in rows:
        w.writerow([" ".join(map(str, sel)), " ".join(map(str, desc)),
                    " ".join(map(str, t.diagram_u.as_list())), " ".join(map(str, t.diagram_v.as_list())),
                    t.coeff.numerator, t.coeff.denominator])
    return buf.getvalue().rstrip("\n")

def _terms_pretty(terms: Sequence[CGTerm]) -> str:
    if not terms:
        return "  (no terms)"
    width = max(len(str(t.diagram_u)) for t in terms)
    return "\n".join(f"  {str(t.diagram_u):<{width}} x {t.diagram_v}   {t.coeff}" for t in terms)

# --- computation ---------------------------------------------------------------

def _run_query(label: HighestVectorLabel, d: DescentTriple, wp: WeightPair, mode: str):
    """(terms, diff) for one label and descent; diff is None unless mode is 'both'."""
    formula = cg_expansion(label, d, wp) if mode in ("formula", "both") else None
    oracle = oracle_expansion(label, d, wp) if mode in ("oracle", "both") else None
    if mode == "both":
        return formula, compare(formula, oracle)
    return (formula if formula is not None else oracle), None

def _diff_json(diff) -> List[dict]:
    return [{"diagram_u": m.diagram_u.as_list(), "diagram_v": m.diagram_v.as_list(),
             "formula": None if m.formula is None else fraction_json(m.formula),
             "oracle": None if m.oracle is None else fraction_json(m.oracle)} for m in diff]

# --- decompose / cg / table / verify --------------------------------------------

def do_decompose(args):
    wp = WeightPair.of(args.w1, args.w2)
    labels = enumerate_labels(wp)
    mult = decomposition(wp)
    if args.format == "pretty":
        print(f"{wp}: {len(labels)} highest vectors")
        for L in labels:
            print(f"  {L}  weight {list(label_weight(L))}")
        for w, n in mult.items():
            print(f"  [{w[0]},{w[1]},{w[2]}] x{n}  dim {weyl_dimension(w)}")
        return 0
    payload = {
        "query": {"w1": list(args.w1), "w2": list(args.w2)},
        "labels": [{"label": list(L.selector()), "exponents": list(L.exponents()),
                    "weight": list(label_weight(L))} for L in labels],
        "multiplicities": [{"weight": list(w), "count": n, "dim": weyl_dimension(w)} for w, n in mult.items()],
        "dimension": {"tensor": wp.w1.dim() * wp.w2.dim(),
                      "summands": sum(weyl_dimension(w) * n for w, n in mult.items())},
    }
    _emit(dumps(payload))
    return 0

def do_cg(args):
    wp = WeightPair.of(args.w1, args.w2)
    t, omega, phi, psi, theta = args.label
    label = label_from_selector(t, omega, phi, psi, theta, wp)
    d = DescentTriple(*args.descent)
    if not target_diagram(label, d).is_valid():
        raise ValueError(f"descent {d} leaves the patterns of the summand {list(label_weight(label))}")
    terms, diff = _run_query(label, d, wp, args.mode)
    verified = diff is not None and not diff
    if args.format == "csv":
        _emit(_terms_csv([(label.selector(), d.as_tuple(), x) for x in terms]))
    elif args.format == "pretty":
        print(f"{wp}  label {label}  descent {d}  -> {target_diagram(label, d)}")
        print(_terms_pretty(terms))
        if diff is not None:
            print("formula == oracle" if verified else f"MISMATCH on {len(diff)} terms")
    else:
        payload = {"query": CGQuery(wp, label, d, args.mode).to_json(),
                   "terms": [term_json(x) for x in terms], "verified": verified}
        if diff:
            payload["diff"] = _diff_json(diff)
        _emit(dumps(payload))
    return 1 if diff else 0

def do_table(args):
    wp = WeightPair.of(args.w1, args.w2)
    rows, flat, failed = [], [], False
    for label in sorted(enumerate_labels(wp), key=lambda L: L.selector()):
        for d in iter_descents(label):
            terms, diff = _run_query(label, d, wp, args.mode)
            failed = failed or bool(diff)
            row = {"label": list(label.selector()), "descent": list(d.as_tuple()),
                   "diagram": target_diagram(label, d).as_list(),
                   "terms": [term_json(x) for x in terms],
                   "verified": diff is not None and not diff}
            if diff:
                row["diff"] = _diff_json(diff)
            rows.append(row)
            flat.extend((label.selector(), d.as_tuple(), x) for x in terms)
    if args.format == "csv":
        _emit(_terms_csv(flat), args.out)
    else:
        payload = {"query": CGQuery(wp, None, None, args.mode).to_json(), "rows": rows,
                   "verified": args.mode == "both" and not failed}
        _emit(dumps(payload), args.out)
    return 1 if failed else 0

def do_verify(args):
    names = [args.suite] if args.suite else list(SUITES)
    say = None if args.quiet else _progress_sink()
    max_weight = verify_max_weight() if args.max_weight is None else args.max_weight
    reports = run_suites(names, max_weight, say)
    payload = {"max_weight": max_weight, "suites": [r.to_json() for r in reports],
               "verified": all(r.ok for r in reports)}
    _emit(dumps(payload))
    return 0 if payload["verified"] else 1

# --- argparse ----------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="cg3cli.py", description="Exact gl3 Clebsch-Gordan coefficients.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def weights(sp):
        sp.add_argument("--w1", type=_int_list(2), required=True, help="m1,m2")
        sp.add_argument("--w2", type=_int_list(2), required=True, help="n1,n2")

    pd = sub.add_parser("decompose", help="List highest vectors and multiplicities of U x V")
    weights(pd)
    pd.add_argument("--format", choices=["json", "pretty"], default="json")
    pd.set_defaults(func=do_decompose)

    pc = sub.add_parser("cg", help="Expand one GT vector of a summand in the product basis")
    weights(pc)
    pc.add_argument("--label", type=_int_list(5), required=True, help="type,omega,phi,psi,theta")
    pc.add_argument("--descent", type=_int_list(3), default=(0, 0, 0), help="T1,T2,S")
    pc.add_argument("--mode", choices=MODES, default="both")
    pc.add_argument("--format", choices=["json", "csv", "pretty"], default="json")
    pc.set_defaults(func=do_cg)

    pt = sub.add_parser("table", help="Full coefficient table: all labels x all descents")
    weights(pt)
    pt.add_argument("--mode", choices=MODES, default="both")
    pt.add_argument("--format", choices=["json", "csv"], default="json")
    pt.add_argument("--out")
    pt.set_defaults(func=do_table)

    pv = sub.add_parser("verify", help="Run the verification suites")
    pv.add_argument("--max-weight", type=int, help="default: CG3_VERIFY_MAX_WEIGHT or 2")
    pv.add_argument("--suite", choices=list(SUITES))
    pv.add_argument("-q", "--quiet", action="store_true")
    pv.set_defaults(func=do_verify)

    return p

def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code
    try:
        return args.func(args)
    except (Cg3Error, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2

if __name__ == "__main__":
    raise SystemExit(main())
