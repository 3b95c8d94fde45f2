import json

import numpy as np
import pytest

import sparsecode as sc


def test_weights():
    assert [sc.min_weight(n, s) for n, s in [(6, 2), (12, 3), (42, 6), (30, 9), (56, 14)]] == [
        2, 3, 6, 7, 12]
    assert sc.split_weight_mm(6, 6, 6) == (2, 3)
    assert sc.baseline_weight_cyclic(6, 6, 6) == (4, 2)
    with pytest.raises(sc.UnsupportedRegime):
        sc.min_weight(6, 4)


def test_supports():
    assert sc.mv_supports(6, 4, 2) == [[0, 1], [1, 2], [2, 3], [3, 0], [0, 1], [2, 3]]
    a, b = sc.mm_supports(20, 4, 4, 4, 2, 2)
    assert a[7] == [3, 0] and b[7] == [1, 2]
    assert a[17] == [2, 3] and b[17] == [0, 1]


def test_plan_json_round_trip():
    plan = sc.make_plan("proposed", 20, 4, 4, seed=7)
    assert plan.scheme == "proposed-mm"
    assert plan.omega == (2, 2)
    back = sc.EncodingPlan.from_json(plan.to_json())
    assert back == plan
    assert json.loads(plan.to_json())["seed"] == 7


def test_encode_decode_mv_matches_numpy():
    rng = np.random.default_rng(0)
    dense = rng.standard_normal((60, 40)) * (rng.random((60, 40)) < 0.1)
    a = sc.SparseMatrix.from_dense(dense)
    x = rng.standard_normal(60)
    plan = sc.make_plan("proposed", 6, 4, seed=1)
    coded = sc.encode(a, plan)
    subset = [1, 2, 4, 5]
    results = [sc.spmv_t(coded[w], x) for w in subset]
    got = sc.decode_mv(results, plan, subset, a.cols)
    np.testing.assert_allclose(got, dense.T @ x, rtol=1e-9, atol=1e-12)


def test_encode_decode_mm_matches_numpy():
    a = sc.SparseMatrix.random(40, 16, 0.2, 3)
    b = sc.SparseMatrix.random(40, 12, 0.2, 4)
    plan = sc.make_plan("proposed", 20, 4, 4, seed=2)
    ca = sc.encode(a, plan)
    cb = sc.encode(b, plan, b_side=True)
    subset = list(range(4, 20))
    results = [sc.spmm_t(ca[w], cb[w]) for w in subset]
    got = sc.decode_mm(results, plan, subset, a.cols, b.cols)
    np.testing.assert_allclose(got, a.to_dense().T @ b.to_dense(), rtol=1e-9, atol=1e-10)


def test_decodability_and_kappa():
    plan = sc.make_plan("proposed", 12, 9, seed=1)
    assert sc.exhaustive_decodability(plan) == (220, 0)
    assert sc.hall_check(plan, 9)
    report = sc.kappa_worst(plan)
    assert report["subsets_evaluated"] == 220
    poly = sc.kappa_worst(sc.make_plan("poly", 12, 9))
    assert poly["kappa_worst"] > report["kappa_worst"]
    best, best_report = sc.best_of_trials(plan, 4, 10)
    assert best_report["kappa_worst"] <= sc.kappa_worst(sc.make_plan("proposed", 12, 9, seed=10))["kappa_worst"]


def test_hetero():
    n, ka, s, ranges = sc.expand_profile([3, 2, 2, 1, 1, 1, 1, 1], 5)
    assert (n, ka, s) == (12, 9, 3)
    assert ranges[0] == (0, 3)
    ok, subset = sc.partial_recovery([3, 2, 2, 1, 1, 1, 1, 1], 5, [2, 1, 1, 1, 1, 1, 1, 1])
    assert ok and len(subset) == 9


def test_simulate_and_cli():
    csv = sc.simulate_csv(12, 9, 1, 3, rows=200, cols_a=180, seeds=[1, 2])
    lines = csv.strip().splitlines()
    assert lines[0].startswith("scheme,n,k_a,k_b,s")
    assert len(lines) == 5
    code, out, _ = sc.cli(["compare-weights", "--cases", "paper"])
    assert code == 0 and "fig6-mv-30-9" in out
    code, _, err = sc.cli(["plan", "--n", "12", "--ka", "9", "--s", "2"])
    assert code == 1 and "inconsistent" in err


def test_errors_surface_as_python_exceptions():
    with pytest.raises(sc.InvalidMatrix):
        sc.SparseMatrix.from_coo(2, 2, [0, 0], [0, 0], [1.0, 2.0])
    with pytest.raises(sc.ParseError):
        sc.EncodingPlan.from_json("{not json")
    with pytest.raises(sc.Error):
        sc.make_plan("nope", 6, 4)
