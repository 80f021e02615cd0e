"""Geometry of agent placements on the unit circle.

Positions are plain floats measured as fractions of the circumference, always
in the canonical range [0, 1). Agents are labeled 0..n-1 in clockwise
(increasing position) order; every public constructor returns instances in
that canonical labeling, and all other functions assume it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    EmptyInstance,
    EvenAgentCount,
    InvalidParams,
    InvalidProfile,
)

# Absolute tolerance on sum(profile) == 1 for the ArcProfile type itself.
PROFILE_SUM_TOL = 1e-12
# Looser gate applied to raw sequences handed to instance_from_profile.
RAW_PROFILE_SUM_TOL = 1e-9


def wrap(x: float) -> float:
    """Map a real coordinate to the canonical range [0, 1)."""
    r = x % 1.0
    # x % 1.0 can round up to exactly 1.0 for tiny negative inputs.
    return 0.0 if r >= 1.0 else r


def circle_distance(x: float, y: float) -> float:
    """Shortest-arc distance between two canonical positions; lies in [0, 1/2]."""
    d = abs(x - y)
    return min(d, 1.0 - d)


@dataclass(frozen=True)
class Instance:
    """An odd-sized agent placement in canonical clockwise label order."""

    positions: tuple[float, ...]

    def __post_init__(self) -> None:
        n = len(self.positions)
        if n == 0:
            raise EmptyInstance("instance has no agents")
        if n % 2 == 0:
            raise EvenAgentCount(f"{n} agents given; an odd count is required")
        for p in self.positions:
            if not (isinstance(p, float) and 0.0 <= p < 1.0 and math.isfinite(p)):
                raise InvalidParams(f"position {p!r} outside the canonical range [0, 1)")
        if any(a > b for a, b in zip(self.positions, self.positions[1:])):
            raise InvalidParams("positions not in clockwise order; build instances with canonicalize()")

    @property
    def n(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class ArcProfile:
    """Facing-arc lengths of an instance; entry i is agent i's selection probability."""

    p: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.p) == 0:
            raise InvalidProfile("profile has no entries")
        if any(v < 0.0 for v in self.p):
            raise InvalidProfile("profile entries must be non-negative")
        total = math.fsum(self.p)
        if abs(total - 1.0) > PROFILE_SUM_TOL:
            raise InvalidProfile(f"profile sums to {total!r}, expected 1")

    @property
    def n(self) -> int:
        return len(self.p)


def canonicalize(positions: Iterable[float]) -> Instance:
    """Sort positions clockwise, keeping input order among coincident agents.

    Inputs must already lie in [0, 1); only the CLI and the HTTP service
    normalize arbitrary reals onto the circle.
    """
    pos = [float(p) for p in positions]
    for p in pos:
        if not (math.isfinite(p) and 0.0 <= p < 1.0):
            raise InvalidParams(f"position {p!r} outside the canonical range [0, 1)")
    pos.sort()  # Python sort is stable, so coincident agents keep input order
    return Instance(tuple(pos))


def consecutive_arcs(inst: Instance) -> tuple[float, ...]:
    """Clockwise gap from each agent to the next; entry j spans agent j to j+1.

    The last entry wraps around through position 0, so a fully coincident
    instance yields (0, ..., 0, 1): the whole circle belongs to the wrap arc.
    """
    pos = inst.positions
    gaps = [pos[j + 1] - pos[j] for j in range(inst.n - 1)]
    gaps.append(1.0 - (pos[-1] - pos[0]))
    return tuple(gaps)


def _half(n: int) -> int:
    return (n - 1) // 2


def facing_profile(inst: Instance) -> ArcProfile:
    """Arc lengths facing each agent: agent i faces the gap between the two
    agents that sit (n-1)/2 and (n+1)/2 labels clockwise from it."""
    arcs = consecutive_arcs(inst)
    n, h = inst.n, _half(inst.n)
    return ArcProfile(tuple(arcs[(i + h) % n] for i in range(n)))


def _profile_values(profile: ArcProfile | Sequence[float]) -> tuple[float, ...]:
    if isinstance(profile, ArcProfile):
        return profile.p
    vals = tuple(float(v) for v in profile)
    if any(v < 0.0 for v in vals):
        raise InvalidProfile("profile entries must be non-negative")
    if abs(math.fsum(vals) - 1.0) > RAW_PROFILE_SUM_TOL:
        raise InvalidProfile(f"profile sums to {math.fsum(vals)!r}, expected 1")
    return vals


def arcs_from_profile(profile: ArcProfile | Sequence[float]) -> tuple[float, ...]:
    """Invert the facing map: consecutive arc j equals profile entry (j + (n+1)/2) mod n."""
    p = _profile_values(profile)
    n, h = len(p), _half(len(p))
    if n % 2 == 0:
        raise EvenAgentCount(f"{n} profile entries given; an odd count is required")
    return tuple(p[(j + h + 1) % n] for j in range(n))


def instance_from_profile(profile: ArcProfile | Sequence[float]) -> Instance:
    """Rebuild an instance with the given facing profile, anchored at position 0.

    The reconstruction is unique up to rotation. For profiles whose trailing
    agents land exactly on position 0 (a zero-measure boundary), wrapping makes
    canonicalize() shift labels cyclically; the geometry is unaffected.
    """
    arcs = arcs_from_profile(profile)
    pos = [0.0]
    acc = 0.0
    for a in arcs[:-1]:
        acc += a
        pos.append(wrap(min(acc, 1.0)))
    return canonicalize(pos)


def instance_from_two_pair(s: float, t: float) -> Instance:
    """Five agents: a coincident pair at 0, a lone agent at s, a pair at s+t."""
    if s < 0.0 or t < 0.0 or s + t > 1.0:
        raise InvalidParams(f"two-pair parameters need s, t >= 0 and s+t <= 1, got s={s!r} t={t!r}")
    lone, far = wrap(s), wrap(s + t)
    return canonicalize((0.0, 0.0, lone, far, far))


def instance_from_clustering(k: int, t: float) -> Instance:
    """2k+1 agents: k at position 0, k at t, one lone agent opposite at t + 1/2."""
    if not isinstance(k, int) or k < 1:
        raise InvalidParams(f"cluster size k must be a positive integer, got {k!r}")
    if not (0.0 <= t <= 0.5):
        raise InvalidParams(f"cluster separation t must lie in [0, 1/2], got {t!r}")
    return canonicalize([0.0] * k + [t] * k + [wrap(t + 0.5)])


def rotate_instance(inst: Instance, theta: float) -> Instance:
    """Rotate every agent by theta and re-canonicalize."""
    return canonicalize(wrap(p + theta) for p in inst.positions)


def reflect_instance(inst: Instance) -> Instance:
    """Mirror the instance (negate positions) and re-canonicalize."""
    return canonicalize(wrap(-p) for p in inst.positions)


def rotate_start(inst: Instance, first: int) -> Instance:
    """Relabel cyclically so agent `first` becomes agent 0 at position 0.

    The circle is rotated along with the labels, so the result is
    geometrically identical to the input. Implemented by cyclically shifting
    the consecutive arcs and re-accumulating, which keeps coincident agents
    ordered even when the cut passes through a tie.
    """
    n = inst.n
    if not (0 <= first < n):
        raise InvalidParams(f"label {first!r} outside 0..{n - 1}")
    arcs = consecutive_arcs(inst)
    pos = [0.0]
    acc = 0.0
    for j in range(n - 1):
        acc += arcs[(first + j) % n]
        pos.append(wrap(min(acc, 1.0)))
    return canonicalize(pos)
