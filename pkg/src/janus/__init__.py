"""Second-moment structure and QFI of two-component squeezed-vacuum superpositions."""

from .states import (
    DegenerateSpanError,
    InadmissibleCoefficientsError,
    JanusState,
    OverlapData,
    SqueezeParams,
    from_ratio,
    normalized_state,
    overlap,
    overlap_data,
    solve_coefficients,
)
from .moments import (
    G2UndefinedError,
    MomentSet,
    cross_even_moment,
    diagonal_moments,
    g2,
    generating_series,
    generating_series_partial,
    moment_set,
    squeeze_polynomial,
)
from .quadrature import CovarianceSummary, covariance, displace, rotated_variance
from .span import (
    EqualStrengthCoeffs,
    SpanMatrices,
    SpanOptimum,
    aligned_optimum,
    equal_strength_coeffs,
    equal_strength_minimum,
    span_char_poly,
    span_matrices,
    span_minimum,
)
from .qfi import (
    AuxFamilyPoint,
    QfiReport,
    auxiliary_family,
    aux_t_threshold,
    beats_benchmark,
    benchmarks,
    exact_family,
    exact_family_state,
    no_go_bound,
    phase_qfi,
    phase_qfi_squeezed,
    phase_qfi_squeezed_at_u,
    quad_qfi_squeezed_at_u,
    quadratic_qfi,
    quadratic_qfi_envelope,
    vartheta_star,
)
from .fock import (
    CutoffInsufficientError,
    FockVector,
    fock_janus,
    fock_squeezed,
    ladder_apply,
    oracle_displace,
    oracle_generator_variance,
    oracle_moments,
    oracle_sandwich,
)

__version__ = "0.1.0"
