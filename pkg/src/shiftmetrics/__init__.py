"""Metric geometry and dimension/entropy estimation on symbolic shift spaces."""

from . import errors
from .cli import RunConfig, emit_table, parse_space, run
from .cylinders import (
    AlphaMatch,
    CylinderIndex,
    NeutralizedMatch,
    OpenBallMatch,
    RadiusLadder,
    agrees_on,
    alpha_ball_to_cylinder,
    alpha_match,
    alpha_sandwich_windows,
    alpha_window,
    ball_to_cylinder,
    ball_window,
    bowen_ball_to_cylinder,
    bowen_window,
    in_alpha_ball,
    in_ball,
    in_bowen_ball,
    in_neutralized_ball,
    neutralized_ball_to_cylinder,
    neutralized_match,
    neutralized_sandwich_windows,
    neutralized_window,
    open_ball_as_bowen,
    p_of_log_r,
    p_of_r,
    q_of_log_r,
    q_of_r,
    require_alpha_regime,
)
from .estimators import (
    BundleEntry,
    RelationReport,
    SlopeEstimate,
    alpha_estimation_entropy,
    average_over_typical,
    box_dimension,
    brin_katok_local,
    katok_entropy,
    neutralized_brin_katok,
    neutralized_topological,
    one_sided_suite,
    pointwise_dimension,
    relation_report,
    solve_relation_5_23,
    standard_bundle,
    topological_entropy_spanning,
    verify_identities,
)
from .measures import (
    BernoulliMeasure,
    MarkovMeasure,
    Measure,
    MeasureReport,
    cylinder_mass,
    entropy_oracle,
    enumerate_log_masses,
    log_mass_spectrum,
    log_word_mass,
    measure_from_json,
    measure_to_json,
    minimal_cover_log_count,
    reversed_kernel,
    sample_typical,
    stationary,
    support_word_count,
    supported_on,
)
from .metrics import (
    DisagreementTimes,
    FiniteSample,
    HyperbolicityReport,
    MatherParams,
    MetricParams,
    RhoOracle,
    RhoValue,
    SampleOracle,
    check_quasi_metric,
    disagreement_times,
    frink_metrize,
    mather_metric,
    mather_n0,
    orbit_closed_sample,
    rho,
    shifted_rho_table,
    uniform_expansivity_bound,
    verify_hyperbolicity,
)
from .shiftspace import (
    Point,
    ShiftSpace,
    Word,
    count_words,
    make_space,
    point_from_window,
    sample_point,
    shift_point,
    top_entropy_oracle,
)

__all__ = [
    "errors",
    "RunConfig",
    "emit_table",
    "parse_space",
    "run",
    "AlphaMatch",
    "CylinderIndex",
    "NeutralizedMatch",
    "OpenBallMatch",
    "RadiusLadder",
    "agrees_on",
    "alpha_ball_to_cylinder",
    "alpha_match",
    "alpha_sandwich_windows",
    "alpha_window",
    "ball_to_cylinder",
    "ball_window",
    "bowen_ball_to_cylinder",
    "bowen_window",
    "in_alpha_ball",
    "in_ball",
    "in_bowen_ball",
    "in_neutralized_ball",
    "neutralized_ball_to_cylinder",
    "neutralized_match",
    "neutralized_sandwich_windows",
    "neutralized_window",
    "open_ball_as_bowen",
    "p_of_log_r",
    "p_of_r",
    "q_of_log_r",
    "q_of_r",
    "require_alpha_regime",
    "BernoulliMeasure",
    "BundleEntry",
    "MarkovMeasure",
    "Measure",
    "MeasureReport",
    "RelationReport",
    "SlopeEstimate",
    "alpha_estimation_entropy",
    "average_over_typical",
    "box_dimension",
    "brin_katok_local",
    "cylinder_mass",
    "entropy_oracle",
    "enumerate_log_masses",
    "katok_entropy",
    "log_mass_spectrum",
    "log_word_mass",
    "measure_from_json",
    "measure_to_json",
    "minimal_cover_log_count",
    "neutralized_brin_katok",
    "neutralized_topological",
    "one_sided_suite",
    "pointwise_dimension",
    "relation_report",
    "reversed_kernel",
    "sample_typical",
    "solve_relation_5_23",
    "standard_bundle",
    "stationary",
    "support_word_count",
    "supported_on",
    "topological_entropy_spanning",
    "verify_identities",
    "DisagreementTimes",
    "FiniteSample",
    "HyperbolicityReport",
    "MatherParams",
    "MetricParams",
    "Point",
    "RhoOracle",
    "RhoValue",
    "SampleOracle",
    "ShiftSpace",
    "Word",
    "check_quasi_metric",
    "count_words",
    "disagreement_times",
    "frink_metrize",
    "make_space",
    "mather_metric",
    "mather_n0",
    "orbit_closed_sample",
    "point_from_window",
    "rho",
    "sample_point",
    "shift_point",
    "shifted_rho_table",
    "top_entropy_oracle",
    "uniform_expansivity_bound",
    "verify_hyperbolicity",
]
