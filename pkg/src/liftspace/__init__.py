"""Exact dimensional lifting of Boolean function families and single-query
partition measurements on the lifted states."""

from .errors import (
    ArityMismatch,
    CoefficientGrowthError,
    DimensionMismatch,
    FamilyTooLarge,
    LiftspaceError,
    NotAPVM,
    PredicateParseError,
    StateOutsideSpan,
    UnknownBasisIndex,
    ZeroState,
    ZeroVectorDyad,
)
from .funcspace import (
    BooleanFunction,
    FunctionFamily,
    Partition,
    enumerate_functions,
    parse_function_selector,
    partition_by,
    to_evector,
)
from .lifting import LiftedBasis, lift, lift_function_family, verify_orthogonality
from .multipartite import (
    BipartiteShape,
    DensityMatrix,
    coordinate_view,
    is_product,
    partial_trace,
    product_factors,
    purity,
    reshape,
    schmidt_rank,
)
from .predicate import classify, eval_predicate, parse_predicate
from .projector import (
    PartitionPVM,
    QueryOutcome,
    born_probability,
    build_projector,
    build_pvm,
    single_query,
    span_projector,
    state_mismatch_query,
)
from .ratcore import (
    Rational,
    RationalMatrix,
    RationalVector,
    dyad,
    inner_product,
    mat_add,
    mat_mul,
    mat_sub,
    rank,
)

__version__ = "0.1.0"
