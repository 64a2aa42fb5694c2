import pytest

from fewweight import errors
from fewweight.codes import CodeSummary
from fewweight.field import make_field
from fewweight.verifier import (HALVED, SOURCES, Prediction, check_hypotheses,
                                halving_relation_holds, moment_solve, predict, sweep, verify)


def test_quarter_power_tables():
    p = predict("T2", {"m": 4})
    assert (p.n, p.dist) == (20, {12: 60, 18: 20})
    p = predict("T1", {"m": 10})
    assert p.dist == {19602: 29524, 19764: 29524}
    p = predict("T3", {"m": 10})
    assert (p.n, p.dist) == (14762, {9720: 14762, 9882: 44286})


@pytest.mark.parametrize("source,params,n,dist", [
    ("T4", {"m": 4, "eta": 1}, 26, {12: 12, 18: 62, 24: 6}),
    ("T5", {"m": 5, "eta": -1}, 62, {36: 60, 42: 162, 54: 20}),
    ("T6", {"m": 4, "eta": -1}, 44, {18: 4, 30: 72, 36: 4}),
    ("T7", {"m": 7, "eta": 1}, 728, {432: 90, 486: 2024, 540: 72}),
    ("T8", {"m": 4, "eta": 1}, 13, {6: 12, 9: 62, 12: 6}),
    ("T9", {"m": 5, "eta": -1}, 31, {18: 60, 21: 162, 27: 20}),
    ("T10", {"m": 4, "eta": -1}, 22, {9: 4, 15: 72, 18: 4}),
    ("T11", {"m": 5, "eta": 1}, 40, {18: 12, 27: 224, 36: 6}),
    ("T12", {"p": 5, "m": 6, "h": 1}, 3624, {2500: 144, 2900: 15000, 3000: 480}),
    ("T13", {"p": 3, "m": 8, "h": 2}, 1700, {972: 60, 1134: 6480, 1458: 20}),
])
def test_tables_reproduce_stated_instances(source, params, n, dist):
    pred = predict(source, params)
    assert (pred.n, pred.dist) == (n, dist)


def test_m4_nonsquare_admitted_only_for_case_two_even():
    check_hypotheses("T6", {"m": 4, "eta": -1})
    with pytest.raises(errors.HypothesisUnmet):
        check_hypotheses("T6", {"m": 4, "eta": 1})


@pytest.mark.parametrize("source,params", [
    ("T3", {"m": 4}), ("T2", {"m": 10}), ("T1", {"m": 6}), ("T1", {"m": 5}),
    ("T4", {"m": 5, "eta": 1}), ("T5", {"m": 3, "eta": 1}), ("T7", {"m": 3, "eta": 1}),
    ("T12", {"p": 3, "m": 4, "h": 1}), ("T12", {"p": 3, "m": 8, "h": 2}),
    ("T13", {"p": 3, "m": 6, "h": 1}), ("T12", {"p": 9, "m": 6, "h": 1}),
    ("T14", {"m": 4}),
])
def test_hypotheses_rejected(source, params):
    with pytest.raises(errors.HypothesisUnmet):
        predict(source, params)


@pytest.mark.parametrize("source", sorted(HALVED))
@pytest.mark.parametrize("m", range(4, 12))
def test_halving_relation(source, m):
    for eta in (1, -1):
        try:
            check_hypotheses(source, {"m": m, "eta": eta})
        except errors.HypothesisUnmet:
            continue
        assert halving_relation_holds(source, {"m": m, "eta": eta})


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("m", [6, 8, 10, 12])
def test_gold_tables_agree_with_moment_solution(p, m):
    for h in range(1, m // 2):
        for source in ("T12", "T13"):
            try:
                pred = predict(source, {"p": p, "m": m, "h": h})
            except errors.HypothesisUnmet:
                continue
            assert pred.printed_matches_moments


def test_moment_solve_two_weight():
    # the two-weight T2 code at m = 4 is pinned down by its first two moments
    assert moment_solve([12, 18], 20, 3, 4, 20) == {12: 60, 18: 20}


def test_prediction_rejects_bad_transcription():
    with pytest.raises(errors.TableTranscriptionError):
        Prediction("T2", {"p": 3, "m": 4}, 20, 4, {12: 60, 18: 21}, 20)
    with pytest.raises(errors.TableTranscriptionError):
        Prediction("T2", {"p": 3, "m": 4}, 20, 4, {0: 1, 18: 79}, 20)


def test_verify_verdicts():
    pred = predict("T2", {"m": 4})
    good = CodeSummary(20, 3, 4, {12: 60, 18: 20}, True)
    assert verify(pred, good).ok
    off = CodeSummary(20, 3, 4, {12: 59, 15: 1, 18: 20}, True)
    rep = verify(pred, off)
    assert rep.verdict == "distribution-mismatch"
    assert (12, 60, 59) in rep.details and (15, 0, 1) in rep.details
    assert verify(pred, CodeSummary(21, 3, 4, {12: 60, 18: 20}, True)).verdict == "length-mismatch"
    assert rep.to_json()["verdict"] == "distribution-mismatch"


def test_small_sweeps_pass():
    ctx = make_field(3, 4)
    res = sweep("T2", ctx, exhaustive=True, jobs=1)
    assert res.passed and len(res.reports) == 72
    res = sweep("T9", make_field(3, 5), samples=6, jobs=1)
    assert res.passed and len(res.reports) == 6


def test_sweep_reports_unmet_hypothesis():
    res = sweep("T3", make_field(3, 4), jobs=1)
    assert not res.passed and res.hypothesis


def test_sweep_parallel_is_deterministic():
    ctx = make_field(3, 5)
    a = sweep("T5", ctx, samples=8, jobs=1, seed=3)
    b = sweep("T5", ctx, samples=8, jobs=2, seed=3)
    assert [r.to_json() for r in a.reports] == [r.to_json() for r in b.reports]
    assert a.passed


def test_all_sources_listed():
    assert SOURCES == tuple("T%d" % i for i in range(1, 14))
