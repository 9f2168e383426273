import json
from dataclasses import replace

import pytest

import cg3cli
from cg3.suites import SUITES, SuiteReport


def run(capsys, *argv):
    code = cg3cli.main(list(argv))
    return code, capsys.readouterr()


def test_decompose_fundamental_square(capsys):
    code, out = run(capsys, "decompose", "--w1", "1,0", "--w2", "1,0")
    assert code == 0
    payload = json.loads(out.out)
    assert [L["weight"] for L in payload["labels"]] == [[2, 0, 0], [1, 1, 0]]
    assert payload["dimension"] == {"tensor": 9, "summands": 9}


def test_decompose_pretty(capsys):
    code, out = run(capsys, "decompose", "--w1", "1,1", "--w2", "1,1", "--format", "pretty")
    assert code == 0
    assert "2 highest vectors" in out.out


def test_cg_both_modes_agree(capsys):
    code, out = run(capsys, "cg", "--w1", "1,0", "--w2", "1,0", "--label", "1,1,0,0,0",
                    "--descent", "0,0,0", "--mode", "both")
    assert code == 0
    payload = json.loads(out.out)
    assert payload["verified"] is True
    assert payload["query"] == {"w1": [1, 0], "w2": [1, 0], "mode": "both",
                                "label": [1, 1, 0, 0, 0], "descent": [0, 0, 0]}
    assert payload["terms"] == [
        {"diagram_u": [1, 0, 0, 1, 0, 0], "diagram_v": [1, 0, 0, 1, 0, 1],
         "coefficient": {"num": "-1", "den": "1"}},
        {"diagram_u": [1, 0, 0, 1, 0, 1], "diagram_v": [1, 0, 0, 1, 0, 0],
         "coefficient": {"num": "1", "den": "1"}},
    ]


def test_json_round_trip_is_byte_stable(capsys):
    _, out = run(capsys, "cg", "--w1", "2,1", "--w2", "1,0", "--label", "1,0,1,0,0", "--descent", "1,0,0")
    text = out.out.rstrip("\n")
    assert cg3cli.dumps(json.loads(text)) == text


def test_cg_csv(capsys):
    code, out = run(capsys, "cg", "--w1", "1,0", "--w2", "1,0", "--label", "1,0,0,0,0",
                    "--descent", "1,0,0", "--mode", "oracle", "--format", "csv")
    assert code == 0
    lines = out.out.strip().splitlines()
    assert lines[0] == "label,descent,diagram_u,diagram_v,num,den"
    assert len(lines) == 3
    assert lines[1].endswith(",3,2")


@pytest.mark.parametrize("argv", [
    ["cg", "--w1", "1,x", "--w2", "1,0", "--label", "1,0,0,0,0"],
    ["cg", "--w1", "1,0", "--w2", "1,0", "--label", "1,0,0,0"],
    ["cg", "--w1", "1,0", "--w2", "1,0", "--label", "3,0,0,0,0"],
    ["cg", "--w1", "1,2", "--w2", "1,0", "--label", "1,0,0,0,0"],
    ["cg", "--w1", "1,0", "--w2", "1,0", "--label", "1,0,0,0,0", "--descent", "0,1,0"],
    ["decompose", "--w1", "1,0"],
    ["frobnicate"],
])
def test_malformed_input_exits_2(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 2


def test_table_to_file(capsys, tmp_path):
    target = tmp_path / "table.json"
    code, _ = run(capsys, "table", "--w1", "1,0", "--w2", "1,0", "--out", str(target))
    assert code == 0
    payload = json.loads(target.read_text())
    assert payload["verified"] is True
    assert len(payload["rows"]) == 9
    keys = [(r["label"], r["descent"]) for r in payload["rows"]]
    assert keys == sorted(keys)


def test_verify_gamma_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "gamma", "--max-weight", "1", "-q")
    assert code == 0
    payload = json.loads(out.out)
    assert payload["verified"] is True
    assert payload["suites"][0]["suite"] == "gamma"
    assert payload["suites"][0]["checks"] > 0


@pytest.mark.slow
def test_verify_everything(capsys):
    code, out = run(capsys, "verify", "--max-weight", "2", "-q")
    payload = json.loads(out.out)
    assert code == 0, [s["failures"][:3] for s in payload["suites"] if not s["ok"]]


def test_cg_exits_1_when_formula_and_oracle_disagree(capsys, monkeypatch):
    exact = cg3cli.cg_expansion

    def skewed(label, d, wp):
        terms = exact(label, d, wp)
        return [replace(terms[0], coeff=terms[0].coeff + 1)] + list(terms[1:])

    monkeypatch.setattr(cg3cli, "cg_expansion", skewed)
    code, out = run(capsys, "cg", "--w1", "1,0", "--w2", "1,0", "--label", "1,1,0,0,0", "--mode", "both")
    assert code == 1
    payload = json.loads(out.out)
    assert payload["verified"] is False
    assert payload["diff"] == [
        {"diagram_u": [1, 0, 0, 1, 0, 0], "diagram_v": [1, 0, 0, 1, 0, 1],
         "formula": {"num": "0", "den": "1"}, "oracle": {"num": "-1", "den": "1"}},
    ]


def test_verify_exits_1_on_a_failing_suite(capsys, monkeypatch):
    def failing(max_weight, say=None):
        rep = SuiteReport("gamma")
        rep.check(False, "gkz", (0, 0, 0), "residual")
        return rep

    monkeypatch.setitem(SUITES, "gamma", failing)
    code, out = run(capsys, "verify", "--suite", "gamma", "-q")
    assert code == 1
    payload = json.loads(out.out)
    assert payload["verified"] is False
    assert payload["suites"][0]["failures"] == [{"check": "gkz", "case": "(0, 0, 0)", "detail": "residual"}]


def test_malformed_environment_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("CG3_VERIFY_MAX_WEIGHT", "two")
    code, out = run(capsys, "verify", "--suite", "gamma", "-q")
    assert code == 2
    assert "CG3_VERIFY_MAX_WEIGHT" in out.err


def test_empty_argv_ignores_host_arguments(capsys, monkeypatch):
    monkeypatch.setattr("sys.argv", ["cg3cli.py", "decompose", "--w1", "1,0", "--w2", "1,0"])
    code, out = run(capsys)
    assert code == 2
    assert out.out == ""
