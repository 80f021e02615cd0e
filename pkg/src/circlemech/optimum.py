"""Optimal facility location: per-agent cost totals, the agent-optimum rule,
a brute-force grid oracle, and the median/large-arc characterizations."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .geometry import Instance, circle_distance, facing_profile, wrap

# Slack for float ties when classifying coincident or antipodal agents.
TIE_TOL = 1e-12


@dataclass(frozen=True)
class OptResult:
    """Minimum-cost agent location: smallest index attaining the minimum."""

    agent_index: int
    cost: float


def cost_vector(inst: Instance) -> tuple[float, ...]:
    """Total distance from each agent's location to all agents."""
    pos = inst.positions
    return tuple(
        math.fsum(circle_distance(x, y) for y in pos) for x in pos
    )


def optimum(inst: Instance) -> OptResult:
    """Best agent location by exhaustive cost comparison.

    The continuous optimum is always attained at an agent (the cost function
    is piecewise linear with breakpoints only at agents and antipodes, and
    the antipode of an isolated point cannot be a minimum), so this is the
    exact optimum, not a heuristic.
    """
    costs = cost_vector(inst)
    idx = min(range(inst.n), key=lambda i: costs[i])
    return OptResult(agent_index=idx, cost=costs[idx])


def grid_oracle_optimum(inst: Instance, resolution: float) -> tuple[float, float]:
    """Independent check of optimum(): minimize the cost sum over a dense grid.

    The grid always includes the agent positions and their antipodes, the only
    breakpoints of the piecewise-linear cost, so the true minimum is sampled
    exactly. Ties resolve to the smaller position.
    """
    if not (0.0 < resolution <= 0.01):
        raise InvalidParams(f"grid resolution must lie in (0, 0.01], got {resolution!r}")
    pos = np.asarray(inst.positions)
    grid = np.concatenate([np.arange(0.0, 1.0, resolution), pos, (pos + 0.5) % 1.0])
    grid.sort()
    diff = np.abs(grid[:, None] - pos[None, :])
    f = np.minimum(diff, 1.0 - diff).sum(axis=1)
    k = int(np.argmin(f))  # first occurrence, so ties pick the smaller position
    return float(grid[k]), float(f[k])


def _side_counts(inst: Instance, i: int) -> tuple[int, int, int]:
    """Clockwise, counterclockwise, and freely assignable neighbor counts."""
    x = inst.positions[i]
    cw = ccw = free = 0
    for j, y in enumerate(inst.positions):
        if j == i:
            continue
        r = wrap(y - x)
        if r <= TIE_TOL or r >= 1.0 - TIE_TOL or abs(r - 0.5) <= TIE_TOL:
            free += 1  # coincident or antipodal: may count toward either side
        elif r < 0.5:
            cw += 1
        else:
            ccw += 1
    return cw, ccw, free


def is_median_optimal(inst: Instance, i: int) -> bool:
    """Whether agent i attains the optimal cost with a balanced side assignment.

    Balanced means the other n-1 agents can be split (n-1)/2 clockwise and
    (n-1)/2 counterclockwise once coincident and antipodal ties are assigned
    freely.
    """
    costs = cost_vector(inst)
    if costs[i] > min(costs) + TIE_TOL:
        return False
    cw, ccw, _ = _side_counts(inst, i)
    half = (inst.n - 1) // 2
    return cw <= half and ccw <= half


def median_optimal_agent(inst: Instance) -> int:
    """Smallest-index optimal agent admitting a balanced side assignment.

    Existence holds for every instance: at an optimal agent the two strict
    sides can never exceed half the remaining agents, otherwise shifting the
    facility toward the heavier side would lower the cost.
    """
    costs = cost_vector(inst)
    lo = min(costs)
    half = (inst.n - 1) // 2
    for i in range(inst.n):
        if costs[i] > lo + TIE_TOL:
            continue
        cw, ccw, _ = _side_counts(inst, i)
        if cw <= half and ccw <= half:
            return i
    raise AssertionError("no balanced optimal agent; cost comparison is inconsistent")


def large_arc_rule(inst: Instance) -> int | None:
    """Index of the agent whose facing arc covers at least half the circle.

    Such an agent, when one exists, is an optimal facility location: every
    other agent pairs off across it. Returns None when all facing arcs are
    shorter than 1/2.
    """
    for i, p in enumerate(facing_profile(inst).p):
        if p >= 0.5:
            return i
    return None
