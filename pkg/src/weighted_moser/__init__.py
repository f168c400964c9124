"""Numerical toolkit for the weighted critical-exponential functional

    S(alpha, gamma) = sup over unit-norm u of
        integral over the unit disk of (exp(gamma u^2) - 1) |x|^alpha dx,

at the critical exponent gamma = 4 pi: profile representations, weighted
rearrangement, the substitution and half-line coordinate changes, the
explicit extremal candidate with its closed-form value, bounds, and a
projected-ascent maximizer for the radial problem.
"""

from .profiles import (
    FOUR_PI,
    TWO_PI,
    FunctionalReport,
    HalfLineProfile,
    InvalidProfileError,
    PreconditionError,
    QuadratureSpec,
    RadialProfile,
    WeightExponent,
    DEFAULT_QUADRATURE,
    dirichlet_norm_halfline,
    dirichlet_norm_radial,
    evaluate_profile,
    halfline_exp_integral,
    halfline_functional,
    integrate,
    read_profile,
    weighted_exp_functional,
    write_profile,
)
from .rearrange import (
    DistributionFunction,
    PolarSample,
    PolyaSzegoReport,
    disk_integral,
    distribution_function,
    mu_integral,
    mu_rearrange_general,
    mu_rearrange_radial,
    polar_dirichlet,
    polya_szego_check,
    read_polar_sample,
    write_polar_sample,
)
from .transforms import (
    IdentityReport,
    full_pipeline_identity,
    moser_inverse,
    moser_transform,
    radial_to_halfline,
    ssw_functional_identity,
    ssw_inverse,
    ssw_transform,
)
from .candidates import (
    ClosedFormValue,
    a_alpha,
    b_alpha,
    candidate_value,
    carleson_chang_candidate,
    carleson_chang_values,
    concentrating_sequence,
    gauss_integral,
)
from .optimizer import (
    OptimizerConfig,
    OptimizerResult,
    concentration_metric,
    maximize_radial,
    objective_and_gradient,
    supercritical_probe,
)
from .bounds import (
    AlphaStarEstimate,
    RadialIdentityReport,
    Remark2Report,
    alpha_star_estimate,
    candidate_margin,
    concentration_upper_bound,
    radial_identity_check,
    remark2_check,
)

__version__ = "0.1.0"
