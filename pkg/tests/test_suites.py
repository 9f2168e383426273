import pytest

from cg3.suites import SuiteReport, iter_weight_pairs, run_cg, run_labels, run_model, run_relations


def test_report_bookkeeping():
    rep = SuiteReport("x")
    rep.check(True, "a", 1)
    rep.check(False, "b", (2, 3), "off by one")
    assert not rep.ok
    assert rep.failures == [{"check": "b", "case": "(2, 3)", "detail": "off by one"}]
    other = SuiteReport("x", checks=4, notes={"literal_reading_mismatches": 2})
    rep.merge(other)
    rep.merge(SuiteReport("x", notes={"literal_reading_mismatches": 1}))
    assert rep.checks == 6
    assert rep.notes["literal_reading_mismatches"] == 3
    assert rep.to_json()["ok"] is False


def test_weight_pairs():
    pairs = list(iter_weight_pairs(1))
    assert len(pairs) == 9
    assert len(set(pairs)) == 9


def test_model_suite():
    rep = run_model(1)
    assert rep.ok, rep.failures[:3]


def test_labels_suite():
    rep = run_labels(1)
    assert rep.ok, rep.failures[:3]


@pytest.mark.slow
def test_relations_suite():
    rep = run_relations(1)
    assert rep.ok, rep.failures[:3]
    assert set(rep.notes["literal_reading_failures"]) == {"rel1", "rel2", "rel3"}
    # rel1 4·64, rel3 4·4·3·64, pre1 4·64 and f13 64 cells before rel2 and the ∇31 powers
    assert rep.checks > 256 + 3072 + 256 + 64


@pytest.mark.slow
def test_cg_suite_single_worker():
    rep = run_cg(1, workers=1)
    assert rep.ok, rep.failures[:3]
    assert rep.checks > 0
