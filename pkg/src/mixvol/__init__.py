"""Exact mixed volumes, strict-monotonicity criteria and sparse-system audits."""

from __future__ import annotations

from .criteria import (
    BPolytope,
    DeficitBound,
    MonotonicityVerdict,
    SegmentWitness,
    TouchSet,
    b_polytope,
    best_deficit_bound,
    fully_mixed_simplex_witness,
    independent_segments,
    is_essential,
    main3_essential_direction,
    normal_fan_representatives,
    strict_monotonicity_equal,
    strict_monotonicity_general,
    touch_set,
    volume_deficit_bound,
)
from .errors import (
    ContainmentError,
    CrossCheckError,
    DimensionError,
    HypothesisError,
    InputError,
    MixvolError,
    ParseError,
    PreconditionError,
)
from .mixed import (
    cayley,
    cayley_support_face,
    mixed_volume,
    mixed_volume_inductive,
    mixed_volume_polarization,
    mixed_volume_subdivision,
    normalized_mixed_volume,
    pure_mixed_subdivision,
    regular_subdivision,
)
from .polytope import (
    Face,
    Polytope,
    convex_hull,
    euclidean_volume,
    face_in_direction,
    face_lattice,
    lattice_distance,
    minkowski_sum,
    normalized_volume,
    support_value,
    touches,
)
from .systems import (
    SparseSystem,
    analyze_system,
    ber_check,
    bkk_bound,
    cramer_check,
    failure_linkage,
    left_multiply,
    matrices,
    monomial_transform,
    newton_polytopes,
    parse_system,
    restricted_system,
    simplicial_nondegeneracy_check,
)
