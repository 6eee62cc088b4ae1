"""Exact analysis of rational maps P^1 -> P^1 over finite fields.

Ramification profiles, first-order deformations with ramification conditions,
point counts of spaces of maps, and the passage between wild and tame maps.
"""

__version__ = "0.1.0"

from .deform import (
    BrillNoetherDims,
    DeformationReport,
    GenusParams,
    RamCondition,
    brill_noether_dims,
    delta_indicator,
    expected_dim_fixed_target,
    expected_dim_varying_source,
    solve_first_order,
)
from .errors import (
    BudgetExceeded,
    ConditionViolated,
    ConstantMap,
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    InseparableMap,
    NotIrreducible,
    NotPrime,
    ParseError,
    PreconditionViolated,
    RamCoversError,
    TooMuchRamification,
    TruncationExhausted,
    ZeroMap,
)
from .expr import parse_map_expression, parse_point, render
from .fields import DualNumber, FieldElem, build_field, frobenius, invert, level_field
from .moduli import (
    BranchCondition,
    CountReport,
    DimensionEstimate,
    Filters,
    SearchSpace,
    count_mod_pgl2,
    count_moduli,
    enumerate_maps,
    estimate_dimension,
    free_branch_count,
    linear_system_fixed_branch,
    pgl2_order,
)
from .poly import LocalSeries, Mobius, PointP1, Poly, RatMap, derivative, evaluate, mobius_conjugate, reduce_map, taylor_shift
from .ramify import (
    RamPoint,
    RamProfile,
    different_exponent,
    is_separable,
    ramification_index,
    ramification_profile,
    riemann_hurwitz_defect,
)
from .wildtame import (
    ReductionTranscript,
    construct_wild_polynomial,
    lift_tame_to_wild,
    reduce_wild_to_tame,
    verify_example_family,
)

__all__ = [
    "BranchCondition",
    "BrillNoetherDims",
    "BudgetExceeded",
    "ConditionViolated",
    "ConstantMap",
    "CountReport",
    "DeformationReport",
    "DimensionEstimate",
    "DivisionByZero",
    "DualNumber",
    "FieldElem",
    "FieldMismatch",
    "FieldTooLarge",
    "Filters",
    "GenusParams",
    "InseparableMap",
    "LocalSeries",
    "Mobius",
    "NotIrreducible",
    "NotPrime",
    "ParseError",
    "PointP1",
    "Poly",
    "PreconditionViolated",
    "RamCondition",
    "RamCoversError",
    "RamPoint",
    "RamProfile",
    "RatMap",
    "ReductionTranscript",
    "SearchSpace",
    "TooMuchRamification",
    "TruncationExhausted",
    "ZeroMap",
    "brill_noether_dims",
    "build_field",
    "construct_wild_polynomial",
    "count_mod_pgl2",
    "count_moduli",
    "delta_indicator",
    "derivative",
    "different_exponent",
    "enumerate_maps",
    "estimate_dimension",
    "evaluate",
    "expected_dim_fixed_target",
    "expected_dim_varying_source",
    "free_branch_count",
    "frobenius",
    "invert",
    "is_separable",
    "level_field",
    "lift_tame_to_wild",
    "linear_system_fixed_branch",
    "mobius_conjugate",
    "parse_map_expression",
    "parse_point",
    "pgl2_order",
    "ramification_index",
    "ramification_profile",
    "reduce_map",
    "reduce_wild_to_tame",
    "render",
    "riemann_hurwitz_defect",
    "solve_first_order",
    "taylor_shift",
    "verify_example_family",
]
