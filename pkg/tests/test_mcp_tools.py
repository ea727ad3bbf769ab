from aqg_lab.mcp_tools import classify_region, run_experiment, verify_lemmas


def test_classify_region():
    result = classify_region(0.75, 0.75)
    assert result["success"]
    assert result["satisfies_11"]
    assert result["branch"] == "high_alpha"
    assert result["s_min_exclusive"]


def test_classify_region_rejects_boundary_orders():
    result = classify_region(1.0, 0.5)
    assert not result["success"]
    assert "open interval" in result["error"]


def test_run_experiment_reports_every_violation():
    result = run_experiment({"params": {"alpha": 0.0}, "solver": {"dt": -1.0}, "colour": "red"})
    assert not result["success"]
    assert len(result["violations"]) == 3


def test_verify_lemmas_unknown_id():
    result = verify_lemmas(lemma="young")
    assert not result["success"]
    assert "pointwise-product" in result["available"]


def test_verify_single_lemma():
    result = verify_lemmas(lemma="lp-interpolation", samples=3, seed=1)
    assert result["success"] and result["passed"]
    assert len(result["verdicts"]) == 2
