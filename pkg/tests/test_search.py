import math

import numpy as np
import pytest

from circlemech.errors import BudgetExceeded, InvalidParams
from circlemech.geometry import instance_from_profile
from circlemech.ratios import ALPHA, gamma, gamma_hypothesis
from circlemech.search import (
    CurvePoint,
    SearchMethod,
    evaluate_profile_rows,
    grid_search,
    hybrid_search,
    hypothesis_curve_dataset,
    random_search,
    refine,
    worker_count,
)

WORST_PROFILE = (0.5, 0.0, (math.sqrt(2.0) - 1.0) / 2.0, 0.0, (2.0 - math.sqrt(2.0)) / 2.0)


def test_batch_evaluator_matches_scalar():
    rows = np.array([WORST_PROFILE, (0.2,) * 5, (1.0, 0.0, 0.0, 0.0, 0.0)])
    g = evaluate_profile_rows(rows)
    assert g[0] == pytest.approx(ALPHA, abs=1e-12)
    assert g[1] == pytest.approx(1.0, abs=1e-12)
    assert g[2] == pytest.approx(1.0, abs=1e-12)  # coincident, optimum zero
    rng = np.random.default_rng(23)
    for n in (3, 5, 7):
        batch = rng.dirichlet(np.ones(n), size=120)
        got = evaluate_profile_rows(batch)
        for row, val in zip(batch, got):
            direct = gamma(instance_from_profile(tuple(row))).gamma
            assert val == pytest.approx(direct, abs=1e-12)


def test_grid_search_five_agents():
    res = grid_search(5, 0.01)
    assert res.method is SearchMethod.GRID
    assert res.best_gamma == pytest.approx(1.343098591549296, abs=1e-12)
    assert res.best_gamma >= 1.34 - 5e-3
    assert res.best_gamma <= ALPHA + 1e-9
    # reversal quotient: roughly half of comb(104, 4) profiles evaluated
    assert res.evaluations == 2299726
    got = sorted(res.best_profile.p)
    want = sorted(WORST_PROFILE)
    assert got == pytest.approx(want, abs=0.02)


def test_grid_search_three_agents():
    res = grid_search(3, 1e-3)
    assert res.best_gamma == pytest.approx(1.25, abs=1e-3)
    assert sorted(res.best_profile.p) == pytest.approx([0.25, 0.25, 0.5], abs=1e-9)


def test_grid_search_coarse_sanity():
    res = grid_search(5, 0.2)
    assert 1.0 - 1e-12 <= res.best_gamma <= ALPHA + 1e-9


def test_grid_search_rejects_bad_params():
    with pytest.raises(InvalidParams):
        grid_search(4, 0.01)
    with pytest.raises(InvalidParams):
        grid_search(11, 0.01)
    with pytest.raises(InvalidParams):
        grid_search(5, 0.0)
    with pytest.raises(InvalidParams):
        grid_search(5, 1.5)
    with pytest.raises(BudgetExceeded):
        grid_search(9, 0.005)
    with pytest.raises(BudgetExceeded):
        grid_search(7, 1e-3)


def test_random_search_deterministic():
    a = random_search(5, 3000, 42)
    b = random_search(5, 3000, 42)
    assert a == b
    assert a.method is SearchMethod.RANDOM
    assert a.evaluations == 3000
    c = random_search(5, 3000, 43)
    assert c.best_profile != a.best_profile
    assert 1.0 <= a.best_gamma <= ALPHA + 1e-9


def test_random_search_rejects_bad_params():
    with pytest.raises(InvalidParams):
        random_search(4, 10, 0)
    with pytest.raises(InvalidParams):
        random_search(5, 0, 0)


def test_refine_converges_from_coarse_point():
    res = refine((0.5, 0.0, 0.21, 0.0, 0.29), step0=0.01)
    assert res.method is SearchMethod.REFINE
    assert res.best_gamma == pytest.approx(ALPHA, abs=1e-7)
    assert res.best_gamma <= ALPHA + 1e-9


def test_refine_zero_iters_returns_start():
    res = refine((0.2,) * 5, iters=0)
    assert res.best_profile.p == (0.2,) * 5
    assert res.best_gamma == pytest.approx(1.0, abs=1e-12)


def test_refine_ascends_from_flat_start():
    res = refine((0.2,) * 5, step0=0.05, iters=120)
    assert res.best_gamma > 1.01
    assert res.best_gamma <= ALPHA + 1e-9


def test_refine_rejects_bad_params():
    with pytest.raises(InvalidParams):
        refine((0.2,) * 5, step0=0.0)
    with pytest.raises(InvalidParams):
        refine((0.2,) * 5, shrink=1.0)
    with pytest.raises(InvalidParams):
        refine((0.2,) * 5, iters=-1)


def test_hybrid_search_small_budget_reaches_peak():
    res = hybrid_search(5, 0.05, 5000, seed=3, top_k=20)
    assert res.method is SearchMethod.HYBRID
    assert ALPHA - 1e-6 <= res.best_gamma <= ALPHA + 1e-9
    with pytest.raises(InvalidParams):
        hybrid_search(5, 0.05, 100, seed=0, top_k=0)


def test_curve_dataset_rows():
    pts = hypothesis_curve_dataset(9, samples_per_n=2000, seed=1)
    assert [p.n for p in pts] == [3, 5, 7, 9]
    assert all(isinstance(p, CurvePoint) for p in pts)
    three, five, seven, nine = pts
    assert three.gamma_hypothesis is None
    assert 1.25 - 1e-9 <= three.gamma_numeric <= 1.25 + 1e-6
    assert five.gamma_numeric == pytest.approx(1.34315, abs=1e-4)
    assert five.gamma_hypothesis == pytest.approx(ALPHA, abs=1e-12)
    assert five.rd_ratio == pytest.approx(1.6, abs=1e-15)
    assert five.mix_bound == 1.75
    assert seven.gamma_numeric >= 1.40192 - 1e-6
    for p in (five, seven, nine):
        assert p.gamma_numeric <= p.gamma_hypothesis + 5e-3
        assert p.gamma_hypothesis == pytest.approx(gamma_hypothesis(p.n), abs=1e-15)


def test_curve_dataset_rejects_bad_params():
    with pytest.raises(InvalidParams):
        hypothesis_curve_dataset(4)
    with pytest.raises(InvalidParams):
        hypothesis_curve_dataset(3)
    with pytest.raises(BudgetExceeded):
        hypothesis_curve_dataset(5, samples_per_n=60_000_000)


def test_worker_count_env(monkeypatch):
    monkeypatch.delenv("CML_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("CML_THREADS", "4")
    assert worker_count() == 4
    monkeypatch.setenv("CML_THREADS", "abc")
    assert worker_count() == 1
    monkeypatch.setenv("CML_THREADS", "0")
    assert worker_count() == 1


def test_threaded_run_matches_serial(monkeypatch):
    monkeypatch.setenv("CML_THREADS", "2")
    threaded = random_search(5, 3000, 42)
    threaded_grid = grid_search(5, 0.1)
    monkeypatch.delenv("CML_THREADS")
    assert threaded == random_search(5, 3000, 42)
    assert threaded_grid == grid_search(5, 0.1)
