"""Desk-scale acceptance runs; minutes each, deselect with -m 'not slow'."""

from pathlib import Path

import numpy as np
import pytest

from aqg_lab.analysis import verify_lemmas
from aqg_lab.analysis.random_fields import seeded_field
from aqg_lab.dynamics import DissipationParams
from aqg_lab.experiments import parse_config, run_experiment
from aqg_lab.spectral import Grid
from aqg_lab.splitting import high_freq_bound

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

pytestmark = pytest.mark.slow


def load(name: str, **solver):
    config = parse_config((CONFIGS / name).read_text())
    if solver:
        config = config.model_copy(update={"solver": config.solver.model_copy(update=solver)})
    return config


@pytest.fixture(scope="module")
def decay_run(tmp_path_factory):
    return run_experiment(load("decay.json"), directory=tmp_path_factory.mktemp("decay"))


def test_energy_budget_and_its_convergence(tmp_path):
    coarse = run_experiment(load("budget.json"), directory=tmp_path / "coarse").summary
    assert coarse.budget.passed
    assert coarse.budget.relative <= 1e-6
    assert coarse.maximum_principle.passed
    assert coarse.high_frequency.failures == 0
    assert coarse.monotone["l2"]

    fine = run_experiment(load("budget.json", dt=5e-4), directory=tmp_path / "fine").summary
    assert coarse.budget.worst_abs_residual >= 3.0 * fine.budget.worst_abs_residual


def test_decay_inside_region(decay_run):
    summary = decay_run.summary
    assert summary.passed
    assert summary.time_to_eps["hs.2"]["1e-02"] is not None
    for key in ["l2", "linf", "lp.2", "lp.4", "lp.8"]:
        assert summary.time_to_eps[key]["1e-02"] is not None, key
    assert summary.monotone["l2"]
    assert all(summary.monotone[f"hs.{s}"] for s in ("0", "1", "2"))
    assert summary.monotone_decay.passed
    for key in ["linf", "lp.2", "lp.4", "lp.8"]:
        assert summary.monotone[key], key


def test_low_frequency_growth_rate(decay_run):
    split = decay_run.summary.split_rate
    assert split is not None
    assert split.expected_rate == pytest.approx(0.5)
    # the initial data has no energy inside the largest cutoff
    assert set(split.growths) == {"1", "2", "3"}
    assert all(g > 0.0 for g in split.growths.values())
    assert split.rate is not None
    assert split.within_band


def test_high_frequency_bound_on_random_suite():
    grid = Grid(64, 64)
    rng = np.random.default_rng(500)
    for seed in range(500):
        alpha, beta = rng.uniform(0.05, 0.95, size=2)
        delta = rng.uniform(0.5, 20.0)
        theta = seeded_field(grid, seed)
        lhs, rhs = high_freq_bound(theta, DissipationParams(alpha=alpha, beta=beta), delta)
        assert lhs <= rhs * (1.0 + 1e-10)


def test_lemma_suites():
    verdicts = verify_lemmas()
    failed = [(v.report.lemma, v.report.params, v.criterion) for v in verdicts if not v.passed]
    assert not failed
