"""Acceptance gate: one test per primary criterion, each printing a
single pass/fail line and asserting the stated tolerance and budget."""

import math
import re
import time
from pathlib import Path

import circlemech
from circlemech.geometry import canonicalize, facing_profile, instance_from_two_pair
from circlemech.ratios import (
    ALPHA,
    clustering_max,
    gamma,
    gamma_hypothesis,
    sc_bound_polynomial,
    two_pair_sweep,
    TwoPairCase,
)
from circlemech.search import hybrid_search, random_search
from circlemech.verify import run_suite

S_WORST = (2.0 - math.sqrt(2.0)) / 2.0
WORST = instance_from_two_pair(S_WORST, 0.5)


def _line(name: str, ok: bool, detail: str) -> bool:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return ok


def test_worst_instance_reproduction():
    rep = gamma(WORST)
    ok = (
        abs(rep.gamma - ALPHA) <= 1e-9
        and abs(rep.sc - 0.9497475) <= 1e-7
        and abs(rep.opt.cost - 0.7071068) <= 1e-7
    )
    assert _line(
        "worst-instance reproduction",
        ok,
        f"gamma={rep.gamma:.12f} sc={rep.sc:.9f} opt={rep.opt.cost:.9f}",
    )


def test_two_pair_tightness_sweep():
    t0 = time.perf_counter()
    sweep = two_pair_sweep(1e-3)
    elapsed = time.perf_counter() - t0
    a1 = sweep.per_case[TwoPairCase.A1]
    a2 = max(
        sweep.per_case[TwoPairCase.A2_OPT1].gamma,
        sweep.per_case[TwoPairCase.A2_OPT3].gamma,
    )
    ok = (
        abs(sweep.best_gamma - ALPHA) <= 1e-6
        and abs(sweep.best_s - S_WORST) <= 1e-3
        and abs(sweep.best_t - 0.5) <= 1e-3
        and abs(a1.gamma - 9.0 / 8.0) <= 1e-9
        and a2 <= 9.0 / 8.0 + 1e-6
        and elapsed < 10.0
    )
    assert _line(
        "two-pair tightness sweep",
        ok,
        f"max={sweep.best_gamma:.9f} at ({sweep.best_s:.6f}, {sweep.best_t:.6f}), "
        f"A1={a1.gamma:.10f}, A2={a2:.10f}, {elapsed:.1f} s",
    )


def test_hybrid_upper_bound_certification():
    t0 = time.perf_counter()
    result = hybrid_search(5, 0.005, 1_000_000, seed=42, top_k=100)
    elapsed = time.perf_counter() - t0
    ok = (
        ALPHA - 1e-6 <= result.best_gamma <= ALPHA + 1e-9
        and elapsed < 300.0
    )
    assert _line(
        "hybrid upper-bound certification",
        ok,
        f"best={result.best_gamma:.15f} (alpha{result.best_gamma - ALPHA:+.1e}), "
        f"{result.evaluations} evaluations, {elapsed:.1f} s",
    )


def test_social_cost_bound():
    t0 = time.perf_counter()
    suite = run_suite("sc-bound", 1_000_000, seed=0)
    equi = canonicalize([0.0, 0.2, 0.4, 0.6, 0.8])
    sc = gamma(equi).sc
    bound = sc_bound_polynomial(facing_profile(equi))
    elapsed = time.perf_counter() - t0
    ok = (
        suite.passed
        and suite.checked == 1_000_000
        and abs(sc - bound) <= 1e-12
        and abs(bound - 1.2) <= 1e-12
        and elapsed < 60.0
    )
    assert _line(
        "social cost bound",
        ok,
        f"{suite.checked} sampled, {len(suite.violations)} violations, "
        f"equidistant sc={sc:.15f} bound={bound:.15f}, {elapsed:.1f} s",
    )


def test_strategyproofness():
    t0 = time.perf_counter()
    suite = run_suite("strategyproof", 30_000, seed=0)
    elapsed = time.perf_counter() - t0
    ok = suite.passed and suite.checked == 30_000 and elapsed < 60.0
    assert _line(
        "strategyproofness",
        ok,
        f"{suite.checked} triples over n in 3/5/7, "
        f"{len(suite.violations)} violations, {elapsed:.1f} s",
    )


def test_optimum_at_agent_oracle():
    t0 = time.perf_counter()
    suite = run_suite("opt-at-agent", 10_000, seed=0)
    elapsed = time.perf_counter() - t0
    ok = suite.passed and suite.checked == 10_000 and elapsed < 120.0
    assert _line(
        "optimum-at-agent oracle",
        ok,
        f"{suite.checked} instances, {len(suite.violations)} violations, "
        f"{elapsed:.1f} s",
    )


def test_large_arc_rule_and_half_profile_bound():
    t0 = time.perf_counter()
    suite = run_suite("large-arc", 100_000, seed=0)
    elapsed = time.perf_counter() - t0
    # checked counts the big-arc rows plus the half-profile filtered rows
    ok = suite.passed and suite.checked == 200_000 and elapsed < 60.0
    assert _line(
        "large-arc rule and half-profile optimum bound",
        ok,
        f"{suite.checked} filtered samples, {len(suite.violations)} violations, "
        f"{elapsed:.1f} s",
    )


def test_regional_equivalence():
    t0 = time.perf_counter()
    suite = run_suite("region-equiv", 100_000, seed=0)
    stationary = (math.sqrt(15.0) - 3.0) / 6.0
    profile = (stationary, 1.0 - math.sqrt(15.0) / 6.0, 0.0,
               1.0 - math.sqrt(15.0) / 6.0, stationary)
    from circlemech.ratios import RegionTag, region_gamma

    value = region_gamma(profile, RegionTag.AC, validate=False)
    elapsed = time.perf_counter() - t0
    ok = (
        suite.passed
        and abs(value - (5.0 - math.sqrt(15.0))) <= 1e-12
        and elapsed < 60.0
    )
    assert _line(
        "regional equivalence",
        ok,
        f"{suite.checked} filtered samples per region, "
        f"{len(suite.violations)} violations, "
        f"AC stationary={value:.15f} vs {5.0 - math.sqrt(15.0):.15f}, {elapsed:.1f} s",
    )


def test_reduction_monotonicity():
    t0 = time.perf_counter()
    suite = run_suite("reduction", 1_000, seed=0)
    elapsed = time.perf_counter() - t0
    ok = suite.passed and suite.checked == 1_000 and elapsed < 30.0
    assert _line(
        "reduction monotonicity",
        ok,
        f"{suite.checked} large-arc instances, {len(suite.violations)} violations, "
        f"{elapsed:.1f} s",
    )


def test_hypothesis_curve():
    t0 = time.perf_counter()
    ok = abs(gamma_hypothesis(5) - ALPHA) <= 1e-12
    worst_identity = 0.0
    for k in range(2, 11):
        _, peak = clustering_max(k)
        worst_identity = max(worst_identity, abs(gamma_hypothesis(2 * k + 1) - peak))
    ok = ok and worst_identity <= 1e-12
    _, peak1 = clustering_max(1)
    ok = ok and abs(peak1 - 1.25) <= 1e-9
    probe = random_search(7, 1_000_000, seed=20260815)
    margin = gamma_hypothesis(7) + 5e-3 - probe.best_gamma
    elapsed = time.perf_counter() - t0
    ok = ok and margin >= 0.0 and elapsed < 300.0
    assert _line(
        "hypothesis curve",
        ok,
        f"hyp(5)-alpha={gamma_hypothesis(5) - ALPHA:+.1e}, "
        f"max clustering identity gap={worst_identity:.1e} (k 2..10), "
        f"k=1 peak={peak1:.10f}, n=7 consistency margin={margin:.6f}, "
        f"{elapsed:.1f} s",
    )


def test_out_of_scope_bounds_absent():
    # the 1.0456 lower-bound construction and the mixture-bound proofs
    # are deliberately not implemented; the curve table only carries the
    # published reference values as plotting metadata
    root = Path(circlemech.__file__).parent
    offenders = []
    for path in sorted(root.glob("*.py")):
        text = path.read_text()
        if "1.0456" in text:
            offenders.append(f"{path.name}: lower-bound constant")
        if re.search(r"def \w*lower_bound", text):
            offenders.append(f"{path.name}: lower-bound routine")
        if re.search(r"def \w*mixture_bound", text):
            offenders.append(f"{path.name}: mixture-bound routine")
    ok = not offenders
    assert _line(
        "out-of-scope bounds absent",
        ok,
        "no lower-bound or mixture-bound machinery" if ok else "; ".join(offenders),
    )
