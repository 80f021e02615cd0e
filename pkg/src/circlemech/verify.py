"""Seeded property suites behind the command-line `verify` command.

Each suite samples instances (uniformly or with a bias toward the region
it certifies), checks one analytical claim at a fixed tolerance, and
reports counterexamples verbatim so a failure is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .geometry import canonicalize, instance_from_profile
from .mechanisms import strategyproofness_probe
from .optimum import (
    cost_vector,
    grid_oracle_optimum,
    is_median_optimal,
    large_arc_rule,
    median_optimal_agent,
    optimum,
)
from .ratios import equidistance_ball_bound, gamma, large_arc_reduce
from .search import profile_stats

SUITE_BATCH = 200_000
MAX_SAMPLER_ROUNDS = 400


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    checked: int
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def _row_repr(row) -> str:
    return "(" + ", ".join(format(float(v), ".17g") for v in row) + ")"


def _random_instance(rng: np.random.Generator, n: int):
    return canonicalize(tuple(float(v) for v in rng.random(n)))


def _suite_opt_at_agent(samples: int, seed: int, eps: float) -> SuiteResult:
    # a dense location grid must never beat the best agent position by
    # more than discretization noise
    rng = np.random.default_rng(seed)
    violations = []
    for _ in range(samples):
        inst = _random_instance(rng, 5)
        best = optimum(inst).cost
        _, oracle = grid_oracle_optimum(inst, 1e-4)
        if best - oracle > 5e-4:
            violations.append(f"positions={_row_repr(inst.positions)} best={best!r} oracle={oracle!r}")
    return SuiteResult("opt-at-agent", samples, tuple(violations[:5]))


def _suite_median(samples: int, seed: int, eps: float) -> SuiteResult:
    rng = np.random.default_rng(seed)
    sizes = (3, 5, 7, 9)
    violations = []
    for i in range(samples):
        inst = _random_instance(rng, sizes[i % len(sizes)])
        agent = median_optimal_agent(inst)
        costs = cost_vector(inst)
        if not is_median_optimal(inst, agent) or costs[agent] > min(costs) + 1e-12:
            violations.append(f"positions={_row_repr(inst.positions)} agent={agent}")
    return SuiteResult("median", samples, tuple(violations[:5]))


def _big_arc_rows(rng: np.random.Generator, count: int) -> np.ndarray:
    big = rng.uniform(0.5, 0.95, size=count)
    rest = rng.dirichlet(np.ones(4), size=count) * (1.0 - big)[:, None]
    spots = rng.integers(0, 5, size=count)
    rows = np.empty((count, 5))
    for s in range(5):
        pick = spots == s
        order = [*range(s), *range(s + 1, 5)]
        rows[pick, s] = big[pick]
        rows[np.ix_(pick, order)] = rest[pick]
    return rows


def _suite_large_arc(samples: int, seed: int, eps: float) -> SuiteResult:
    rng = np.random.default_rng(seed)
    violations = []

    # agents whose facing arc covers half the circle are optimal
    rows = _big_arc_rows(rng, samples)
    _, _, costs = profile_stats(rows)
    big_idx = np.argmax(rows, axis=1)
    big_cost = np.take_along_axis(costs, big_idx[:, None], axis=1)[:, 0]
    bad = big_cost > costs.min(axis=1) + 1e-9
    for i in np.flatnonzero(bad)[:5]:
        violations.append(f"profile={_row_repr(rows[i])} big agent not optimal")
    for row in rows[:200]:
        if row.max() < 0.5 + 1e-4:
            continue  # reconstruction noise could drop the arc below 1/2
        inst = instance_from_profile(tuple(float(v) for v in row))
        if large_arc_rule(inst) is None:
            violations.append(f"profile={_row_repr(row)} rule missed the large arc")

    # when the optimal agent faces two half-capped pairs whose outer arcs
    # cover half the circle, its cost is at least twice that outer cover
    checked = 0
    shift = np.arange(5)[None, :]
    rounds = 0
    while checked < samples and rounds < MAX_SAMPLER_ROUNDS:
        rounds += 1
        uni = rng.dirichlet(np.ones(5), size=SUITE_BATCH // 2)
        tilt = rng.dirichlet(np.array([13.0, 1.5, 21.0, 1.5, 13.0]), size=SUITE_BATCH // 2)
        batch = np.concatenate([uni, tilt])
        _, _, bcosts = profile_stats(batch)
        rot = (np.argmin(bcosts, axis=1) - 2) % 5
        rel = np.take_along_axis(batch, (shift + rot[:, None]) % 5, axis=1)
        mask = (
            (rel[:, 0] + rel[:, 1] <= 0.5)
            & (rel[:, 3] + rel[:, 4] <= 0.5)
            & (rel[:, 0] + rel[:, 4] >= 0.5)
        )
        picked = np.flatnonzero(mask)[: samples - checked]
        outer = 2.0 * (rel[picked, 0] + rel[picked, 4])
        opt = bcosts[picked].min(axis=1)
        bad = opt < outer - 1e-9
        for i in np.flatnonzero(bad)[:5]:
            violations.append(f"profile={_row_repr(batch[picked[i]])} opt={opt[i]!r} below {outer[i]!r}")
        checked += len(picked)
    if checked < samples:
        violations.append(f"sampler starved: only {checked} of {samples} filtered samples")
    return SuiteResult("large-arc", samples + checked, tuple(violations[:10]))


def _suite_sc_bound(samples: int, seed: int, eps: float) -> SuiteResult:
    rng = np.random.default_rng(seed)
    violations = []
    left = samples
    while left > 0:
        take = min(SUITE_BATCH, left)
        rows = rng.dirichlet(np.ones(5), size=take)
        _, sc, _ = profile_stats(rows)
        p = rows
        f = (
            1.0
            - (p * p).sum(axis=1)
            + 2.0
            * (
                p[:, 0] * p[:, 2]
                + p[:, 3] * p[:, 0]
                + p[:, 3] * p[:, 1]
                + p[:, 4] * p[:, 1]
                + p[:, 4] * p[:, 2]
            )
        )
        bad = (sc > f + 1e-12) | (f > 1.2 + 1e-12)
        for i in np.flatnonzero(bad)[:5]:
            violations.append(f"profile={_row_repr(rows[i])} sc={sc[i]!r} bound={f[i]!r}")
        left -= take
    return SuiteResult("sc-bound", samples, tuple(violations[:5]))


def _suite_strategyproof(samples: int, seed: int, eps: float) -> SuiteResult:
    rng = np.random.default_rng(seed)
    sizes = (3, 5, 7)
    violations = []
    for i in range(samples):
        n = sizes[i % len(sizes)]
        inst = _random_instance(rng, n)
        agent = int(rng.integers(0, n))
        report = float(rng.random())
        truthful, deviated = strategyproofness_probe(inst, agent, report)
        if truthful > deviated + 1e-9:
            violations.append(
                f"positions={_row_repr(inst.positions)} agent={agent} report={report!r} "
                f"truthful={truthful!r} deviated={deviated!r}"
            )
    return SuiteResult("strategyproof", samples, tuple(violations[:5]))


def _region_tables(rows: np.ndarray):
    a, b, c, d, e = (rows[:, i] for i in range(5))
    xs = np.zeros_like(rows)
    xs[:, 1] = d
    xs[:, 2] = d + e
    xs[:, 3] = d + e + a
    xs[:, 4] = d + e + a + b
    costs = np.zeros_like(rows)
    for j in range(4):
        for k in range(j + 1, 5):
            dd = xs[:, k] - xs[:, j]
            dd = np.minimum(dd, 1.0 - dd)
            costs[:, j] += dd
            costs[:, k] += dd
    base = (
        (costs[:, 2] <= costs.min(axis=1) + 1e-12)
        & (c <= 0.5)
        & (a + e <= 0.5)
        & (a + b <= 0.5)
        & (d + e <= 0.5)
    )
    sc = np.einsum("ij,ij->i", costs, rows)
    direct = sc / costs[:, 2]
    routes = {
        "A": (a + e + d, a + e + d <= 0.5),
        "B": (b + c, b + c <= 0.5),
        "C": (e + a + b, e + a + b <= 0.5),
        "D": (c + d, c + d <= 0.5),
    }
    out = {}
    for first in "AB":
        for second in "CD":
            d14, ok14 = routes[first]
            d25, ok25 = routes[second]
            c1 = 2 * d + e + c + d14
            c2 = d + 2 * e + a + d25
            c3 = b + 2 * a + 2 * e + d
            c4 = b + 2 * a + e + d14
            c5 = 2 * b + a + c + d25
            formula = (a * c1 + b * c2 + c * c3 + d * c4 + e * c5) / c3
            out[first + second] = (base & ok14 & ok25, formula)
    return direct, out


def _suite_region_equiv(samples: int, seed: int, eps: float) -> SuiteResult:
    rng = np.random.default_rng(seed)
    counts = {tag: 0 for tag in ("AC", "AD", "BC", "BD")}
    violations = []
    rounds = 0
    while min(counts.values()) < samples and rounds < MAX_SAMPLER_ROUNDS:
        rounds += 1
        rows = rng.dirichlet(np.ones(5), size=SUITE_BATCH * 2)
        direct, tables = _region_tables(rows)
        for tag, (mask, formula) in tables.items():
            need = samples - counts[tag]
            if need <= 0:
                continue
            picked = np.flatnonzero(mask)[:need]
            gap = np.abs(formula[picked] - direct[picked])
            for i in np.flatnonzero(gap > 1e-9)[:5]:
                violations.append(
                    f"region {tag}: profile={_row_repr(rows[picked[i]])} gap={gap[i]!r}"
                )
            counts[tag] += len(picked)
    for tag, got in counts.items():
        if got < samples:
            violations.append(f"sampler starved for region {tag}: {got} of {samples}")
    return SuiteResult("region-equiv", sum(counts.values()), tuple(violations[:10]))


def _suite_eps_ball(samples: int, seed: int, eps: float) -> SuiteResult:
    if not (0.0 <= eps < 0.4):
        raise InvalidParams(f"ball radius must lie in [0, 0.4), got {eps!r}")
    cap = equidistance_ball_bound(eps)
    rng = np.random.default_rng(seed)
    violations = []
    checked = 0
    rounds = 0
    while checked < samples and rounds < MAX_SAMPLER_ROUNDS:
        rounds += 1
        delta = rng.uniform(-eps, eps, size=(SUITE_BATCH, 5)) if eps else np.zeros((SUITE_BATCH, 5))
        delta -= delta.mean(axis=1, keepdims=True)
        rows = 0.2 + delta
        ok = (np.abs(delta).max(axis=1) <= eps) & (rows.min(axis=1) >= 0.0)
        rows = rows[ok][: samples - checked]
        g, _, _ = profile_stats(rows)
        for i in np.flatnonzero(g > cap + 1e-9)[:5]:
            violations.append(f"profile={_row_repr(rows[i])} gamma={g[i]!r} cap={cap!r}")
        checked += len(rows)
    return SuiteResult("eps-ball", checked, tuple(violations[:5]))


def _suite_reduction(samples: int, seed: int, eps: float) -> SuiteResult:
    rng = np.random.default_rng(seed)
    violations = []
    rows = _big_arc_rows(rng, samples)
    for row in rows:
        inst = instance_from_profile(tuple(float(v) for v in row))
        res = large_arc_reduce(inst)
        legs = [gamma(step).gamma for step in res.path]
        drops = [b - a for a, b in zip(legs, legs[1:])]
        if any(d < -1e-9 for d in drops) or len(res.path) > 3:
            violations.append(f"profile={_row_repr(row)} leg ratios={legs!r}")
    return SuiteResult("reduction", samples, tuple(violations[:5]))


SUITES = {
    "opt-at-agent": _suite_opt_at_agent,
    "median": _suite_median,
    "large-arc": _suite_large_arc,
    "sc-bound": _suite_sc_bound,
    "strategyproof": _suite_strategyproof,
    "region-equiv": _suite_region_equiv,
    "eps-ball": _suite_eps_ball,
    "reduction": _suite_reduction,
}

SUITE_NAMES = tuple(SUITES)

DEFAULT_SAMPLES = {
    "opt-at-agent": 10_000,
    "median": 10_000,
    "large-arc": 100_000,
    "sc-bound": 1_000_000,
    "strategyproof": 10_000,
    "region-equiv": 100_000,
    "eps-ball": 100_000,
    "reduction": 1_000,
}


def run_suite(name: str, samples: int | None, seed: int, eps: float = 0.1) -> SuiteResult:
    if name not in SUITES:
        raise InvalidParams(f"unknown suite {name!r}, pick one of {', '.join(SUITE_NAMES)}")
    if samples is None:
        samples = DEFAULT_SAMPLES[name]
    if not (isinstance(samples, int) and samples >= 1):
        raise InvalidParams(f"samples must be a positive integer, got {samples!r}")
    return SUITES[name](samples, seed, eps)
