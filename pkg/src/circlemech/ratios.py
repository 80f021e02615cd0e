"""Approximation-ratio analysis for the facing-arc rule on five agents.

Closed forms for the structured families (two coincident pairs plus a lone
agent; two k-clusters plus a lone agent), the regional ratio formulas valid
when the lone agent of the main case analysis is median optimal, the social
cost bound polynomial, the near-equidistant ball bound, and the monotone
slide reduction that pushes any large-arc instance to a structured one
without decreasing the ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .errors import (
    CaseViolation,
    InvalidParams,
    InvalidProfile,
    PreconditionViolation,
    RegionViolation,
)
from .geometry import ArcProfile, Instance, facing_profile, rotate_start
from .mechanisms import MechanismOutcome, expected_social_cost, pcd
from .optimum import OptResult, cost_vector, optimum

# Worst-case ratio of the facing-arc rule on five agents.
ALPHA = 7.0 - 4.0 * math.sqrt(2.0)
# Upper bound on the rule's expected social cost over all five-agent instances.
SC_BOUND = 1.2

CONSTRAINT_TOL = 1e-12
DEGENERATE_DENOM = 1e-15


@dataclass(frozen=True)
class GammaReport:
    """Expected cost, optimum, and their ratio for one instance."""

    sc: float
    opt: OptResult
    gamma: float


def gamma(
    inst: Instance, mechanism: Callable[[Instance], MechanismOutcome] = pcd
) -> GammaReport:
    """Ratio of the mechanism's expected social cost to the optimum.

    A zero-cost optimum forces every agent to one point, where the mechanism
    is also free; the ratio is defined as 1 there.
    """
    sc = expected_social_cost(inst, mechanism(inst))
    opt = optimum(inst)
    g = sc / opt.cost if opt.cost > 0.0 else 1.0
    return GammaReport(sc=sc, opt=opt, gamma=g)


# ---------------------------------------------------------------------------
# Two coincident pairs plus a lone agent, parameterized by the lone agent's
# clockwise gaps: pair at 0, lone agent at s, second pair at s+t.


class TwoPairCase(Enum):
    """Arc-order and largest-arc regimes of the two-pair family.

    A means the wrap gap u = 1-s-t is the largest arc (u >= t >= s) and B
    means t is (t >= u >= s); suffix 1 means the largest arc covers at least
    half the circle, suffix 2 at most half. A2 splits by which agent is
    optimal: the near pair (OPT1) or the lone agent (OPT3). B1 is valid on
    the whole strip t >= 1/2 regardless of how u compares with s; its cost
    derivation never uses u >= s, and its maximizer in fact has u < s.
    """

    A1 = "A1"
    A2_OPT1 = "A2_opt1"
    A2_OPT3 = "A2_opt3"
    B1 = "B1"
    B2 = "B2"


def _case_constraints(case: TwoPairCase, s: float, t: float) -> list[tuple[str, bool]]:
    u = 1.0 - s - t
    tol = CONSTRAINT_TOL
    base = [("s >= 0", s >= -tol), ("s + t <= 1", s + t <= 1.0 + tol)]
    if case is TwoPairCase.A1:
        return base + [
            ("u >= t", u >= t - tol),
            ("t >= s", t >= s - tol),
            ("u >= 1/2", u >= 0.5 - tol),
        ]
    if case is TwoPairCase.A2_OPT1:
        return base + [
            ("u >= t", u >= t - tol),
            ("t >= s", t >= s - tol),
            ("u <= 1/2", u <= 0.5 + tol),
            ("3s + 4t >= 2", 3.0 * s + 4.0 * t >= 2.0 - tol),
        ]
    if case is TwoPairCase.A2_OPT3:
        return base + [
            ("u >= t", u >= t - tol),
            ("t >= s", t >= s - tol),
            ("u <= 1/2", u <= 0.5 + tol),
            ("3s + 4t <= 2", 3.0 * s + 4.0 * t <= 2.0 + tol),
        ]
    if case is TwoPairCase.B1:
        return base + [("t >= 1/2", t >= 0.5 - tol)]
    return base + [
        ("t >= u", t >= u - tol),
        ("u >= s", u >= s - tol),
        ("t <= 1/2", t <= 0.5 + tol),
    ]


def two_pair_gamma(s: float, t: float, case: TwoPairCase) -> float:
    """Closed-form ratio of the two-pair family inside the given case."""
    for name, ok in _case_constraints(case, s, t):
        if not ok:
            raise CaseViolation(f"{case.value} requires {name}; got s={s!r} t={t!r}")
    if case is TwoPairCase.A1:
        num = 2.0 * t * s + 2.0 * s + 2.0 * t
        den = 2.0 * s + 2.0 * t
    elif case in (TwoPairCase.A2_OPT1, TwoPairCase.A2_OPT3, TwoPairCase.B2):
        num = -4.0 * s * s - 4.0 * t * t - 6.0 * t * s + 4.0 * t + 4.0 * s
        den = 2.0 * s + 2.0 * t if case is TwoPairCase.A2_OPT3 else 2.0 - 2.0 * t - s
    else:
        num = -4.0 * s * s - 4.0 * s * t + 3.0 * s - 2.0 * t + 2.0
        den = 2.0 - 2.0 * t - s
    if abs(den) <= DEGENERATE_DENOM:
        return 1.0  # zero optimum happens only with zero cost everywhere
    return num / den


@dataclass(frozen=True)
class TwoPairCaseMax:
    gamma: float
    s: float
    t: float


@dataclass(frozen=True)
class TwoPairSweepResult:
    best_gamma: float
    best_s: float
    best_t: float
    best_case: TwoPairCase
    per_case: dict[TwoPairCase, TwoPairCaseMax]


def _case_gamma_grid(case: TwoPairCase, s: np.ndarray, t: np.ndarray) -> np.ndarray:
    u = 1.0 - s - t
    tol = CONSTRAINT_TOL
    mask = (s >= -tol) & (s + t <= 1.0 + tol)
    if case is TwoPairCase.A1:
        mask &= (u >= t - tol) & (t >= s - tol) & (u >= 0.5 - tol)
        num, den = 2 * t * s + 2 * s + 2 * t, 2 * s + 2 * t
    elif case in (TwoPairCase.A2_OPT1, TwoPairCase.A2_OPT3, TwoPairCase.B2):
        num = -4 * s * s - 4 * t * t - 6 * t * s + 4 * t + 4 * s
        if case is TwoPairCase.A2_OPT3:
            mask &= (u >= t - tol) & (t >= s - tol) & (u <= 0.5 + tol)
            mask &= 3 * s + 4 * t <= 2.0 + tol
            den = 2 * s + 2 * t
        elif case is TwoPairCase.A2_OPT1:
            mask &= (u >= t - tol) & (t >= s - tol) & (u <= 0.5 + tol)
            mask &= 3 * s + 4 * t >= 2.0 - tol
            den = 2.0 - 2 * t - s
        else:
            mask &= (t >= u - tol) & (u >= s - tol) & (t <= 0.5 + tol)
            den = 2.0 - 2 * t - s
    else:
        mask &= t >= 0.5 - tol
        num, den = -4 * s * s - 4 * s * t + 3 * s - 2 * t + 2.0, 2.0 - 2 * t - s
    safe = np.abs(den) > DEGENERATE_DENOM
    out = np.full(s.shape, -np.inf)
    good = mask & safe
    out[good] = num[good] / den[good]
    out[mask & ~safe] = 1.0
    return out


def _refine_case(case: TwoPairCase, s: float, t: float, step: float) -> TwoPairCaseMax:
    def val(ss: float, tt: float) -> float:
        try:
            return two_pair_gamma(ss, tt, case)
        except CaseViolation:
            return -math.inf

    best = val(s, t)
    delta = step
    while delta > 1e-13:
        moved = False
        for ds, dt in ((delta, 0), (-delta, 0), (0, delta), (0, -delta),
                       (delta, delta), (delta, -delta), (-delta, delta), (-delta, -delta)):
            cand = val(s + ds, t + dt)
            if cand > best:
                best, s, t, moved = cand, s + ds, t + dt, True
        if not moved:
            delta *= 0.5
    return TwoPairCaseMax(gamma=best, s=s, t=t)


def two_pair_sweep(step: float) -> TwoPairSweepResult:
    """Grid the (s, t) triangle per case, then refine each case maximum."""
    if not (0.0 < step <= 0.01):
        raise InvalidParams(f"sweep step must lie in (0, 0.01], got {step!r}")
    axis = np.arange(0.0, 1.0 + step / 2, step)
    s, t = np.meshgrid(axis, axis, indexing="ij")
    per_case: dict[TwoPairCase, TwoPairCaseMax] = {}
    for case in TwoPairCase:
        vals = _case_gamma_grid(case, s, t)
        flat = int(np.argmax(vals))  # row-major first occurrence: smallest (s, t)
        s0, t0 = float(s.flat[flat]), float(t.flat[flat])
        per_case[case] = _refine_case(case, s0, t0, step)
    best_case = max(per_case, key=lambda c: (per_case[c].gamma, c.value))
    top = per_case[best_case]
    return TwoPairSweepResult(
        best_gamma=top.gamma,
        best_s=top.s,
        best_t=top.t,
        best_case=best_case,
        per_case=per_case,
    )


def two_pair_surface(step: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Best feasible case value on the (s, t) grid, NaN where no case
    applies; grids are meshed with s on the first axis."""
    if not (0.0 < step <= 0.01):
        raise InvalidParams(f"surface step must lie in (0, 0.01], got {step!r}")
    axis = np.arange(0.0, 1.0 + step / 2, step)
    s, t = np.meshgrid(axis, axis, indexing="ij")
    best = np.full_like(s, -np.inf)
    for case in TwoPairCase:
        np.maximum(best, _case_gamma_grid(case, s, t), out=best)
    return s, t, np.where(np.isinf(best), np.nan, best)


# ---------------------------------------------------------------------------
# Regional closed forms. Labels follow the five-agent case analysis in which
# the lone optimal agent is number 3 of 5: with profile (a, b, c, d, e) the
# circle reads, clockwise from agent 3: arc a to agent 4, b to agent 5, c to
# agent 1, d to agent 2, e back to agent 3. Regions pick the geodesic route
# of the two cross-circle distances: agents 1-4 via a+e+d (A) or b+c (B),
# and agents 2-5 via e+a+b (C) or c+d (D).


class RegionTag(Enum):
    AC = "AC"
    AD = "AD"
    BC = "BC"
    BD = "BD"


def _profile5(p: ArcProfile | Sequence[float]) -> tuple[float, float, float, float, float]:
    vals = tuple(p.p) if isinstance(p, ArcProfile) else tuple(float(v) for v in p)
    if len(vals) != 5:
        raise InvalidProfile(f"regional formulas need 5 entries, got {len(vals)}")
    return vals  # type: ignore[return-value]


def _region_conditions(
    p: tuple[float, float, float, float, float], region: RegionTag
) -> list[tuple[str, bool]]:
    a, b, c, d, e = p
    tol = CONSTRAINT_TOL
    # positions clockwise from agent 1, whose gaps are (d, e, a, b)
    xs = (0.0, d, d + e, d + e + a, d + e + a + b)
    costs = [
        math.fsum(min(abs(x - y), 1.0 - abs(x - y)) for y in xs) for x in xs
    ]
    checks = [
        ("agent 3 attains the optimum", costs[2] <= min(costs) + tol),
        ("P3 <= 1/2", c <= 0.5 + tol),
        ("P1 + P5 <= 1/2", a + e <= 0.5 + tol),
        ("P1 + P2 <= 1/2", a + b <= 0.5 + tol),
        ("P4 + P5 <= 1/2", d + e <= 0.5 + tol),
    ]
    if region in (RegionTag.AC, RegionTag.AD):
        checks.append(("route A: P1+P5+P4 <= 1/2", a + e + d <= 0.5 + tol))
    else:
        checks.append(("route B: P2+P3 <= 1/2", b + c <= 0.5 + tol))
    if region in (RegionTag.AC, RegionTag.BC):
        checks.append(("route C: P5+P1+P2 <= 1/2", e + a + b <= 0.5 + tol))
    else:
        checks.append(("route D: P3+P4 <= 1/2", c + d <= 0.5 + tol))
    return checks


def region_membership(p: ArcProfile | Sequence[float], region: RegionTag) -> bool:
    """Whether the profile satisfies every condition the region's formula needs."""
    return all(ok for _, ok in _region_conditions(_profile5(p), region))


def region_gamma(
    p: ArcProfile | Sequence[float], region: RegionTag, validate: bool = True
) -> float:
    """Regional closed-form ratio.

    With validate=False the polynomial is evaluated as a bare function, which
    is how boundary stationary points that fall outside the geometric region
    are inspected.
    """
    prof = _profile5(p)
    if validate:
        for name, ok in _region_conditions(prof, region):
            if not ok:
                raise RegionViolation(f"{region.value} membership fails: {name}")
    a, b, c, d, e = prof
    d14 = a + e + d if region in (RegionTag.AC, RegionTag.AD) else b + c
    d25 = e + a + b if region in (RegionTag.AC, RegionTag.BC) else c + d
    c1 = 2 * d + e + c + d14
    c2 = d + 2 * e + a + d25
    c3 = b + 2 * a + 2 * e + d
    c4 = b + 2 * a + e + d14
    c5 = 2 * b + a + c + d25
    sc = a * c1 + b * c2 + c * c3 + d * c4 + e * c5
    if c3 <= DEGENERATE_DENOM:
        return 1.0
    return sc / c3


# ---------------------------------------------------------------------------
# Global bounds.


def sc_bound_polynomial(p: ArcProfile | Sequence[float]) -> float:
    """Quadratic upper bound on the rule's expected cost, a function of the
    profile alone. Its maximum over the simplex is 1.2 at the equidistant
    profile."""
    a, b, c, d, e = _profile5(p)
    square_sum = a * a + b * b + c * c + d * d + e * e
    cross = a * c + d * a + d * b + e * b + e * c
    return 1.0 - square_sum + 2.0 * cross


def equidistance_ball_bound(eps: float) -> float:
    """Ratio guarantee when every profile entry is within eps of 1/5."""
    if not (0.0 <= eps < 0.4):
        raise InvalidParams(f"ball radius must lie in [0, 0.4), got {eps!r}")
    return 1.2 / (1.2 - 3.0 * eps)


# ---------------------------------------------------------------------------
# Monotone slide reduction for five-agent instances with a facing arc >= 1/2.


@dataclass(frozen=True)
class ReductionResult:
    """Slide path from the relabeled input to a structured terminal instance.

    path[0] is the input relabeled so the large-arc agent is index 2 and all
    positions sit in the first half-turn; each later entry differs from its
    predecessor in exactly one coordinate. final is path[-1]: either two
    coincident pairs plus a lone agent, or at least three coincident agents.
    """

    path: tuple[Instance, ...]
    final: Instance


def _is_terminal(inst: Instance) -> bool:
    counts: dict[float, int] = {}
    for x in inst.positions:
        counts[x] = counts.get(x, 0) + 1
    sizes = sorted(counts.values())
    return max(sizes) >= 3 or sizes == [1, 2, 2]


def large_arc_reduce(inst: Instance) -> ReductionResult:
    """Slide isolated flanking agents to their neighbors, never decreasing
    the ratio, until the instance is two-pair or has a 3-cluster.

    Works on five agents with some facing arc of length at least 1/2. Along
    a slide both the expected cost and the optimum are linear in the moved
    coordinate (the quadratic parts cancel), so the ratio is monotone per
    leg and the better endpoint is decided by one derivative sign at the
    start of the leg.
    """
    if inst.n != 5:
        raise InvalidParams(f"reduction is defined for 5 agents, got {inst.n}")
    prof = facing_profile(inst).p
    big = next((i for i, v in enumerate(prof) if v >= 0.5), None)
    if big is None:
        raise PreconditionViolation("no facing arc covers half the circle")
    work = rotate_start(inst, (big - 2) % 5)
    path = [work]
    for _ in range(4):
        if _is_terminal(work):
            break
        pos = list(work.positions)
        p = facing_profile(work).p
        c = cost_vector(work)
        sc = math.fsum(ci * pi for ci, pi in zip(c, p))
        if pos[0] != pos[1] != pos[2]:
            # agent 1 slides; expr is the clockwise derivative of sc, negated
            expr = -p[0] + 2 * p[1] + p[2] + p[3] + p[4] - c[3] + c[4]
            pos[1] = pos[0] if expr * c[2] - sc >= 0.0 else pos[2]
        elif pos[2] != pos[3] != pos[4]:
            expr = c[0] - c[1] + p[0] + p[1] + p[2] + 2 * p[3] - p[4]
            pos[3] = pos[4] if expr * c[2] - sc >= 0.0 else pos[2]
        else:
            raise AssertionError("non-terminal instance with no isolated flank")
        work = Instance(tuple(pos))
        path.append(work)
    else:
        raise AssertionError("reduction failed to terminate in 4 slides")
    return ReductionResult(path=tuple(path), final=work)


# ---------------------------------------------------------------------------
# Two k-clusters plus a lone agent: k agents at 0, k at t, one at t + 1/2.


def clustering_gamma(k: int, t: float) -> float:
    """Closed-form ratio of the clustering family on n = 2k+1 agents."""
    if not isinstance(k, int) or k < 1:
        raise InvalidParams(f"cluster size k must be a positive integer, got {k!r}")
    if not (0.0 < t < 0.5):
        raise InvalidParams(f"cluster separation t must lie in (0, 1/2), got {t!r}")
    sc = 2.0 * k * t - 2.0 * k * t * t - t + 0.5
    opt = k * t - t + 0.5
    return sc / opt


def t_max(k: int) -> float:
    """Separation maximizing the clustering ratio for k >= 2."""
    if not isinstance(k, int) or k < 2:
        raise InvalidParams(f"closed-form maximizer needs k >= 2, got {k!r}")
    return (math.sqrt(k) - 1.0) / (2.0 * (k - 1.0))


def clustering_max(k: int, grid_step: float = 1e-5) -> tuple[float, float]:
    """Numeric maximizer of the clustering ratio over t, with local refinement.

    Returns (t, gamma). Needed for k = 1, where the closed-form maximizer
    does not apply; for larger k it reproduces the closed form.
    """
    if not isinstance(k, int) or k < 1:
        raise InvalidParams(f"cluster size k must be a positive integer, got {k!r}")
    if not (0.0 < grid_step <= 0.01):
        raise InvalidParams(f"grid step must lie in (0, 0.01], got {grid_step!r}")
    ts = np.arange(grid_step, 0.5, grid_step)
    sc = 2.0 * k * ts - 2.0 * k * ts * ts - ts + 0.5
    opt = k * ts - ts + 0.5
    vals = sc / opt
    i = int(np.argmax(vals))
    t_best, best = float(ts[i]), float(vals[i])
    delta = grid_step
    while delta > 1e-14:
        moved = False
        for cand in (t_best - delta, t_best + delta):
            if 0.0 < cand < 0.5:
                v = clustering_gamma(k, cand)
                if v > best:
                    t_best, best, moved = cand, v, True
        if not moved:
            delta *= 0.5
    return t_best, best


def gamma_hypothesis(n: int) -> float:
    """Conjectured worst-case ratio for odd n >= 5, the clustering family's
    maximum at k = (n-1)/2."""
    if not isinstance(n, int) or n % 2 == 0 or n < 5:
        raise InvalidParams(f"hypothesis curve needs odd n >= 5, got {n!r}")
    return 2.0 * ((n * n - 3.0 * n + 4.0) - math.sqrt(2.0) * (n - 1.0) ** 1.5) / (n - 3.0) ** 2
