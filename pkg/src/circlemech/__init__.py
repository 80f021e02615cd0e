"""Strategyproof facility location on the unit circle.

Evaluate the proportional-to-facing-arcs mechanism, compare it against the
optimum and simpler randomized rules, and search for worst-case instances.
"""

from .errors import (
    BudgetExceeded,
    CaseViolation,
    CircleMechError,
    EmptyInstance,
    EvenAgentCount,
    IndexOutOfRange,
    InvalidParams,
    InvalidProfile,
    PreconditionViolation,
    RegionViolation,
)
from .geometry import (
    ArcProfile,
    Instance,
    arcs_from_profile,
    canonicalize,
    circle_distance,
    consecutive_arcs,
    facing_profile,
    instance_from_clustering,
    instance_from_profile,
    instance_from_two_pair,
    reflect_instance,
    rotate_instance,
    rotate_start,
    wrap,
)
from .mechanisms import mixture, pcd, random_dictator
from .optimum import (
    OptResult,
    cost_vector,
    grid_oracle_optimum,
    large_arc_rule,
    median_optimal_agent,
    optimum,
)
from .ratios import (
    ALPHA,
    SC_BOUND,
    GammaReport,
    clustering_gamma,
    clustering_max,
    gamma,
    gamma_hypothesis,
    sc_bound_polynomial,
    two_pair_gamma,
    two_pair_sweep,
)
from .search import (
    CurvePoint,
    SearchResult,
    grid_search,
    hybrid_search,
    hypothesis_curve_dataset,
    random_search,
    refine,
)

__all__ = [
    "ALPHA",
    "ArcProfile",
    "BudgetExceeded",
    "CaseViolation",
    "CircleMechError",
    "CurvePoint",
    "EmptyInstance",
    "EvenAgentCount",
    "GammaReport",
    "IndexOutOfRange",
    "Instance",
    "InvalidParams",
    "InvalidProfile",
    "OptResult",
    "PreconditionViolation",
    "RegionViolation",
    "SC_BOUND",
    "SearchResult",
    "arcs_from_profile",
    "canonicalize",
    "circle_distance",
    "clustering_gamma",
    "clustering_max",
    "consecutive_arcs",
    "cost_vector",
    "facing_profile",
    "gamma",
    "gamma_hypothesis",
    "grid_oracle_optimum",
    "grid_search",
    "hybrid_search",
    "hypothesis_curve_dataset",
    "instance_from_clustering",
    "instance_from_profile",
    "instance_from_two_pair",
    "large_arc_rule",
    "median_optimal_agent",
    "mixture",
    "optimum",
    "pcd",
    "random_dictator",
    "random_search",
    "reflect_instance",
    "refine",
    "rotate_instance",
    "rotate_start",
    "sc_bound_polynomial",
    "two_pair_gamma",
    "two_pair_sweep",
    "wrap",
]
