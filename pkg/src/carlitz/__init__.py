"""Exact arithmetic for L-polynomials of Carlitz module twists, their rank
invariants, and the geometry of the loci where ranks jump."""

__version__ = "0.1.0"

from .fields import Field, FqElement
from .multipoly import (
    GF,
    MultiPoly,
    PolyRing,
    QQ,
    ZZ,
    aring,
    is_homogeneous,
    lring,
    parse_poly,
    poly_arith,
    reduce_mod_p,
    specialize,
    to_text,
)
from .twists import (
    TwistPoly,
    is_powerfree,
    is_shift_stable,
    parse_twist,
    shift,
    shift_orbit,
    twist_equivalent,
)
from .lfun import (
    LPoly,
    MatrixProvider,
    RankRecord,
    analytic_rank,
    build_k,
    extract_coefficients,
    l_polynomial,
    load_provider,
    parse_provider,
    rank_at_infinity,
    rank_record,
    schur_provider,
    twist_l_polynomial,
)
from .geometry import (
    IdealHandle,
    hilbert_data,
    ideal_nesting_check,
    is_complete_intersection,
    radical_membership,
    smallest_power_in_ideal,
    variety_ideal,
)
from .groebner import groebner_basis
from .census import (
    CensusSpec,
    CensusResult,
    census,
    census_consistency,
    nesting_census,
    shift_orbit_reduce,
)
