"""Majorization toolkit.

Vector majorization orders (weak, classical, and a stronger cross-product
order), a ratio-weighted Hardy-Littlewood-Polya inequality, doubly
stochastic witnesses, a sampled Schur-Ostrowski criterion, vertex
majorization and facility location on trees, and barycenter geometry on
K-spiders.
"""

from .majorization import (
    DEFAULT_RTOL,
    DEFAULT_TOL,
    InequalityReport,
    MajorizationVerdict,
    RankedVector,
    SchurReport,
    StochasticMatrix,
    check_classical,
    check_strong,
    check_weak,
    doubly_stochastic_witness,
    hlp_generalized_check,
    is_doubly_stochastic,
    mass_ratio,
    rank_descending,
    schur_ostrowski_check,
    tomic_weyl_check,
)
from .spider import (
    ConvexityReport,
    SpiderFunction,
    SpiderMeasure,
    SpiderPoint,
    convexity_conditions_check,
    geodesic_midpoint,
    jensen_check,
    npc_inequality_check,
    origin,
    spider_barycenter_numeric,
    spider_distance,
    spider_objective,
    tripod_barycenter,
)
from .trees import (
    CenterResult,
    FacilityResult,
    Tree,
    VertexRelation,
    build_tree,
    distance_vector,
    equity_measure,
    facility_argmin,
    majorization_center,
    subtree_partition,
    vertex_relation,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_RTOL",
    "DEFAULT_TOL",
    "InequalityReport",
    "MajorizationVerdict",
    "RankedVector",
    "SchurReport",
    "StochasticMatrix",
    "check_classical",
    "check_strong",
    "check_weak",
    "doubly_stochastic_witness",
    "hlp_generalized_check",
    "is_doubly_stochastic",
    "mass_ratio",
    "rank_descending",
    "schur_ostrowski_check",
    "tomic_weyl_check",
    "ConvexityReport",
    "SpiderFunction",
    "SpiderMeasure",
    "SpiderPoint",
    "convexity_conditions_check",
    "geodesic_midpoint",
    "jensen_check",
    "npc_inequality_check",
    "origin",
    "spider_barycenter_numeric",
    "spider_distance",
    "spider_objective",
    "tripod_barycenter",
    "CenterResult",
    "FacilityResult",
    "Tree",
    "VertexRelation",
    "build_tree",
    "distance_vector",
    "equity_measure",
    "facility_argmin",
    "majorization_center",
    "subtree_partition",
    "vertex_relation",
    "__version__",
]
