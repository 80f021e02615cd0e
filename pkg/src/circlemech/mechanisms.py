"""Randomized facility-location mechanisms on the circle.

Each mechanism maps an instance to an exact discrete distribution over the
reported agent locations. Expectations are closed-form sums, never sampled,
so downstream checks carry no Monte-Carlo noise. Coincident support points
are kept per agent; merging them is a display concern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import IndexOutOfRange, InvalidParams, InvalidProfile
from .geometry import Instance, canonicalize, circle_distance, facing_profile

PROB_SUM_TOL = 1e-12


@dataclass(frozen=True)
class MechanismOutcome:
    """Discrete distribution over circle locations, one (location, probability)
    pair per agent index."""

    support: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if any(prob < 0.0 for _, prob in self.support):
            raise InvalidProfile("outcome probabilities must be non-negative")
        total = math.fsum(prob for _, prob in self.support)
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise InvalidProfile(f"outcome probabilities sum to {total!r}, expected 1")

    @property
    def locations(self) -> tuple[float, ...]:
        return tuple(loc for loc, _ in self.support)

    @property
    def probs(self) -> tuple[float, ...]:
        return tuple(prob for _, prob in self.support)


def pcd(inst: Instance) -> MechanismOutcome:
    """Pick agent i's location with probability equal to its facing-arc length.

    On the unit circle the facing arcs already sum to 1, so no normalization
    is involved.
    """
    probs = facing_profile(inst).p
    return MechanismOutcome(tuple(zip(inst.positions, probs)))


def random_dictator(inst: Instance) -> MechanismOutcome:
    """Pick a uniformly random agent's location."""
    w = 1.0 / inst.n
    return MechanismOutcome(tuple((x, w) for x in inst.positions))


def mixture(inst: Instance, lam: float) -> MechanismOutcome:
    """Convex combination: facing-arc rule with weight lam, uniform rule with 1-lam."""
    if not (isinstance(lam, (int, float)) and 0.0 <= lam <= 1.0):
        raise InvalidParams(f"mixture weight must lie in [0, 1], got {lam!r}")
    arcs = facing_profile(inst).p
    w = 1.0 / inst.n
    probs = tuple(lam * p + (1.0 - lam) * w for p in arcs)
    return MechanismOutcome(tuple(zip(inst.positions, probs)))


def agent_expected_cost(inst: Instance, outcome: MechanismOutcome, i: int) -> float:
    """Expected distance from agent i's location to the chosen facility."""
    if not (0 <= i < inst.n):
        raise IndexOutOfRange(f"agent index {i!r} outside 0..{inst.n - 1}")
    x = inst.positions[i]
    return math.fsum(prob * circle_distance(x, loc) for loc, prob in outcome.support)


def social_cost_at(inst: Instance, location: float) -> float:
    """Sum of agent distances to a fixed facility location."""
    return math.fsum(circle_distance(x, location) for x in inst.positions)


def expected_social_cost(inst: Instance, outcome: MechanismOutcome) -> float:
    """Expected sum of agent distances under the outcome distribution.

    When the support is the agent locations this is the probability-weighted
    sum of the per-agent cost totals.
    """
    return math.fsum(prob * social_cost_at(inst, loc) for loc, prob in outcome.support)


def strategyproofness_probe(
    inst: Instance, i: int, misreport: float
) -> tuple[float, float]:
    """Expected cost of agent i when truthful vs. after a unilateral misreport.

    Both expectations use agent i's true location; only the report fed to the
    facing-arc rule changes. A strategyproof rule keeps the first component
    no larger than the second.
    """
    if not (0 <= i < inst.n):
        raise IndexOutOfRange(f"agent index {i!r} outside 0..{inst.n - 1}")
    if not (0.0 <= misreport < 1.0):
        raise InvalidParams(f"misreport {misreport!r} outside the canonical range [0, 1)")
    truthful = agent_expected_cost(inst, pcd(inst), i)
    reported = list(inst.positions)
    reported[i] = misreport
    deviated_outcome = pcd(canonicalize(reported))
    x_true = inst.positions[i]
    deviated = math.fsum(
        prob * circle_distance(x_true, loc) for loc, prob in deviated_outcome.support
    )
    return truthful, deviated
