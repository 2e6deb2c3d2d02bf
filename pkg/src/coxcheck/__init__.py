"""Exact verification of Fano varieties presented by graded Cox rings.

The pipeline reconstructs the canonical toric ambient variety from a graded
presentation (or takes an explicit fan), checks every input hypothesis,
computes the Fano index from the Picard lattice, and certifies the Mukai
inequality (i_X - 1) * rho_X <= n with witnesses that re-verify by pure
substitution.  All arithmetic is exact.
"""

from .bunchedring import (
    Bunch,
    GradedCoxPresentation,
    ambient_fan,
    anticanonical_class,
    is_locally_factorial,
    moving_cone,
    phi_bunch,
    picard_group,
    sigma_bunch,
    units_condition_sufficient,
)
from .certify import recheck_report
from .errors import (
    CoxcheckError,
    DomainError,
    InputError,
    NonGenericPolarizationError,
)
from .exactmath import (
    LatticeBasis,
    divisibility_index,
    hermite_normal_form,
    integer_kernel,
    lattice_index,
    lattice_intersection,
)
from .fans import (
    Fan,
    FanChecks,
    VectorConfiguration,
    WeightedRays,
    cartier_data,
    facet_neighbors,
    fan_checks,
    gale_dual,
    is_ample,
    moment_polytope,
    normal_fan,
    weighted_homogenisation,
)
from .groebner import (
    Polynomial,
    TermOrder,
    buchberger,
    graded_degree,
    parse_polynomial,
    poly_to_string,
    radical_membership,
)
from .mukai import (
    ConstructionInput,
    ExtractionForm,
    MukaiReport,
    TheoremContradiction,
    barycentric_certificate,
    check_construction,
    degree_not_small,
    extraction_form,
    fano_index,
    index_bounds,
    low_coefficient_representative,
    recognize_equality_case,
    verify_mukai_inequality,
)
from .polyhedra import (
    HPolytope,
    LPProblem,
    LPResult,
    RationalCone,
    VPolytope,
    cone_membership,
    dual_description,
    hull_membership,
    lp_solve,
    polar_dual,
    v_to_h,
)

__version__ = "0.1.0"
