import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circlemech.errors import IndexOutOfRange, InvalidParams
from circlemech.geometry import canonicalize, instance_from_two_pair
from circlemech.mechanisms import (
    MechanismOutcome,
    agent_expected_cost,
    expected_social_cost,
    mixture,
    pcd,
    random_dictator,
    social_cost_at,
    strategyproofness_probe,
)

S_WORST = (2.0 - math.sqrt(2.0)) / 2.0
WORST = canonicalize((0.0, 0.0, S_WORST, S_WORST + 0.5, S_WORST + 0.5))
EQUI = canonicalize((0.0, 0.2, 0.4, 0.6, 0.8))
# Expected total cost of the worst instance under the facing-arc rule,
# written out from the per-agent sums: (7*sqrt(2) - 8) / 2.
WORST_SC = (7.0 * math.sqrt(2.0) - 8.0) / 2.0


def positions_lists(max_n: int = 7):
    return st.integers(min_value=1, max_value=(max_n - 1) // 2).flatmap(
        lambda k: st.lists(
            st.floats(min_value=0.0, max_value=1.0, exclude_max=True),
            min_size=2 * k + 1,
            max_size=2 * k + 1,
        )
    )


def test_pcd_equidistant():
    out = pcd(EQUI)
    assert out.probs == pytest.approx((0.2,) * 5, abs=1e-15)
    assert out.locations == EQUI.positions


def test_pcd_worst_instance():
    expected = (0.5, 0.0, (math.sqrt(2.0) - 1.0) / 2.0, 0.0, S_WORST)
    assert pcd(WORST).probs == pytest.approx(expected, abs=1e-15)


def test_pcd_three_coincident_cluster_takes_all_mass():
    out = pcd(canonicalize((0.0, 0.0, 0.0, 0.3, 0.6)))
    assert out.probs == pytest.approx((0.3, 0.3, 0.4, 0.0, 0.0), abs=1e-15)
    assert math.fsum(out.probs[:3]) == pytest.approx(1.0, abs=1e-15)


def test_random_dictator_uniform():
    assert random_dictator(EQUI).probs == pytest.approx((0.2,) * 5, abs=1e-15)
    tri = canonicalize((0.1, 0.4, 0.9))
    assert random_dictator(tri).probs == pytest.approx((1 / 3,) * 3, abs=1e-15)


def test_mixture_endpoints_and_affinity():
    assert mixture(WORST, 1.0).probs == pcd(WORST).probs
    assert mixture(WORST, 0.0).probs == random_dictator(WORST).probs
    assert mixture(EQUI, 0.5).probs == pytest.approx((0.2,) * 5, abs=1e-15)
    hi = mixture(WORST, 1.0).probs
    lo = mixture(WORST, 0.0).probs
    for lam in (0.0, 0.25, 0.5, 1.0):
        mixed = mixture(WORST, lam).probs
        blended = tuple(lam * h + (1.0 - lam) * l for h, l in zip(hi, lo))
        assert mixed == pytest.approx(blended, abs=1e-15)
    with pytest.raises(InvalidParams):
        mixture(WORST, -0.1)
    with pytest.raises(InvalidParams):
        mixture(WORST, 1.5)


def test_agent_expected_cost_equidistant():
    out = pcd(EQUI)
    for i in range(5):
        assert agent_expected_cost(EQUI, out, i) == pytest.approx(0.24, abs=1e-12)


def test_agent_expected_cost_worst_instance():
    out = pcd(WORST)
    # lone agent: 0.5*s from the near pair plus s*0.5 from the far pair
    assert agent_expected_cost(WORST, out, 2) == pytest.approx(S_WORST, abs=1e-12)
    for i in (3, 4):
        assert agent_expected_cost(WORST, out, i) == pytest.approx(
            (math.sqrt(2.0) - 1.0) / 2.0, abs=1e-12
        )
    with pytest.raises(IndexOutOfRange):
        agent_expected_cost(WORST, out, 5)


def test_point_mass_expected_cost_is_zero():
    out = MechanismOutcome(((0.4, 1.0), (0.9, 0.0)))
    inst = canonicalize((0.4, 0.4, 0.9))
    assert agent_expected_cost(inst, out, 0) == 0.0


def test_expected_social_cost_frozen():
    assert expected_social_cost(EQUI, pcd(EQUI)) == pytest.approx(1.2, abs=1e-12)
    assert expected_social_cost(WORST, pcd(WORST)) == pytest.approx(WORST_SC, abs=1e-12)
    point = canonicalize((0.3,) * 5)
    assert expected_social_cost(point, pcd(point)) == 0.0


def test_social_cost_at_matches_manual_sum():
    assert social_cost_at(EQUI, 0.0) == pytest.approx(1.2, abs=1e-12)
    assert social_cost_at(EQUI, 0.1) == pytest.approx(0.1 + 0.1 + 0.3 + 0.5 + 0.3, abs=1e-12)


@given(positions_lists())
@settings(max_examples=200)
def test_outcome_probabilities_sum_to_one(raw):
    inst = canonicalize(raw)
    for out in (pcd(inst), random_dictator(inst), mixture(inst, 0.3)):
        assert math.fsum(out.probs) == pytest.approx(1.0, abs=1e-12)
        assert all(p >= 0.0 for p in out.probs)


@given(positions_lists())
@settings(max_examples=200)
def test_social_cost_linearity(raw):
    inst = canonicalize(raw)
    out = pcd(inst)
    total = math.fsum(agent_expected_cost(inst, out, i) for i in range(inst.n))
    assert expected_social_cost(inst, out) == pytest.approx(total, abs=1e-12)


def test_probe_identity_misreport():
    truthful, deviated = strategyproofness_probe(WORST, 2, WORST.positions[2])
    assert truthful == pytest.approx(deviated, abs=1e-15)


@given(
    positions_lists(),
    st.integers(min_value=0, max_value=6),
    st.floats(min_value=0.0, max_value=1.0, exclude_max=True),
)
@settings(max_examples=300)
def test_probe_never_rewards_misreporting(raw, agent, lie):
    inst = canonicalize(raw)
    truthful, deviated = strategyproofness_probe(inst, agent % inst.n, lie)
    assert truthful <= deviated + 1e-9
