"""Error bounds for weighted endpoint and point quadrature rules under
generalized (alpha, m) convexity, verified against an adaptive oracle."""

from .core import (
    BoundCase,
    BoundReport,
    ConvexityParams,
    DifferentiablePair,
    DomainSpec,
    EvalDomainError,
    HHBoundError,
    Interval,
    InvalidCaseError,
    InvalidIntervalError,
    InvalidParamsError,
    RealFunction,
    TheoremId,
    UnknownFamilyError,
    derivative,
    make_interval,
    parse_function,
    registry_eval,
    registry_families,
)
from .quadrature import (
    IntegralResult,
    Product,
    QuadratureError,
    envelope_excess,
    integrate,
    kernel_K,
    lhs_endpoint,
    lhs_endpoint_with_error,
    lhs_point,
    lhs_point_with_error,
    residual_endpoint_identity,
    residual_point_identity,
    step_weight,
    step_weight_profile,
    sup_norm,
)
from .convexity import (
    AbsPower,
    GridSpec,
    Verdict,
    Witness,
    check_alpha_m_convex,
    check_convex_direct,
    check_hermite_hadamard,
    check_hypothesis,
    classify_region,
)
from .bounds import (
    ComponentIntegralId,
    absolute_moment,
    classical_symmetric_rhs,
    component_integral,
    evaluate_bound,
    is_symmetric_about_midpoint,
    midpoint_moment,
    midpoint_rhs,
    midpoint_rhs_convex,
    midpoint_rhs_midsplit,
    oracle_component_integral,
    oracle_midpoint_moment,
    oracle_trapezoid_moment,
    trapezoid_moment,
    trapezoid_rhs,
    trapezoid_rhs_convex,
    trapezoid_rhs_midsplit,
)
from .harness import (
    CSV_HEADER,
    SUP_SAFETY_FACTOR,
    CaseReport,
    CaseSpec,
    CaseTemplate,
    SuiteConfig,
    SuiteResult,
    default_suite,
    format_real,
    reduction_check,
    run_suite,
    sweep_x,
    verify_case,
)

__version__ = "0.1.0"
