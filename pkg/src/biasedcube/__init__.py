"""Exact analysis of Boolean functions and set families on the p-biased cube."""

from .cube import (
    InputError,
    PreconditionError,
    SetFamily,
    WeightVector,
    complement_family,
    family_from_text,
    family_measure,
    family_to_text,
    format_rational,
    is_simply_rooted,
    is_union_closed,
    missing_lower_neighbors,
    parse_rational,
    point_measure,
    subfamily_containing,
)
from .explore import (
    MonteCarloEstimate,
    SearchResult,
    enumerate_families,
    monte_carlo_measure,
    sample_point,
    search_min_ratio,
    union_closure,
)
from .hitting import (
    HittingCertificate,
    build_certificate,
    enumerate_minimal_hitting_sets,
    is_hitting,
    is_minimal_hitting,
    knill_size_margin,
    weighted_size_margin,
)
from .spectral import (
    BooleanFunction,
    InfluenceProfile,
    Spectrum,
    coordinate_influence_defects,
    degree_one_identities,
    derivative,
    indicator,
    influence_level_identity_defect,
    influences,
    low_degree_bound_margin,
    parseval_defect,
    transform,
    transform_naive,
)
from .verify import (
    DualFormReport,
    FranklRatioReport,
    KarpasDiagnostic,
    VerificationReport,
    Witness,
    karpas_diagnostics,
    verify_frankl_ratio,
    verify_karpas_uniform,
    verify_knill_uniform,
    verify_simply_rooted,
    verify_weighted_karpas,
    verify_weighted_knill,
)

__version__ = "0.1.0"
