"""Numerical synthetic Lorentzian comparison geometry.

Law-of-cosines solvers in constant-curvature model planes, comparison
triangles and signed comparison angles, upper-angle estimation between
timelike curves, Minkowski cones over metric spaces, and seeded
curvature-bound audits over example spaces.
"""

from .angles import (
    AngleEstimate,
    AngleScheme,
    DirectionSpace,
    angle_along_geodesic_check,
    angle_triangle_audit,
    direction_space,
    estimate_upper_angle,
    k_independence_report,
)
from .comparison import (
    ComparisonSeparation,
    ComparisonTriangle,
    SidePoint,
    comparison_angle,
    comparison_tau,
    corresponding_side_point,
    make_comparison_triangle,
    straightening_check,
)
from .cone import (
    CircleBase,
    ConePoint,
    FiniteMetricBase,
    LineBase,
    MetricBase,
    cone_d,
    cone_le,
    cone_space,
    cone_tau,
    cone_utility_bounds,
    load_metric_base,
    save_metric_base,
    vertex_direction_angle,
)
from .curvature import (
    BranchReport,
    EquivalenceCell,
    FanConfig,
    SamplerConfig,
    branching_detect,
    check_monotonicity,
    check_triangle_comparison,
    equivalence_audit,
    hinge_check,
)
from .flat import (
    CausalClass,
    FlatTriangleRealization,
    causal_rel_flat,
    embed_cone_over_line,
    realize_triangle_flat,
    segment_point,
    tangent_angle_flat,
    tau_flat,
)
from .kernel import (
    CurvatureParam,
    HingeShape,
    OneSidedResult,
    Orientation,
    SignedAngle,
    SolvedSide,
    TriangleShape,
    angle_from_sides,
    diameter_of,
    extended_loc_margin,
    flat_limit_gap,
    one_sided_x,
    side_from_hinge,
)
from .report import CheckReport, Violation
from .spaces import (
    Direction,
    FiniteSpaceTable,
    SpaceHandle,
    TableSpace,
    TimelikeCurve,
    exp_at,
    geodesic,
    load_finite_space,
    log_at,
    make_builtin,
    save_finite_space,
    table_from_samples,
    validate_finite_space,
)

__version__ = "0.1.0"

__all__ = [
    "AngleEstimate", "AngleScheme", "DirectionSpace",
    "angle_along_geodesic_check", "angle_triangle_audit", "direction_space",
    "estimate_upper_angle", "k_independence_report",
    "ComparisonSeparation", "ComparisonTriangle", "SidePoint",
    "comparison_angle", "comparison_tau", "corresponding_side_point",
    "make_comparison_triangle", "straightening_check",
    "CircleBase", "ConePoint", "FiniteMetricBase", "LineBase", "MetricBase",
    "cone_d", "cone_le", "cone_space", "cone_tau", "cone_utility_bounds",
    "load_metric_base", "save_metric_base", "vertex_direction_angle",
    "BranchReport", "EquivalenceCell", "FanConfig", "SamplerConfig",
    "branching_detect", "check_monotonicity", "check_triangle_comparison",
    "equivalence_audit", "hinge_check",
    "CausalClass", "FlatTriangleRealization", "causal_rel_flat",
    "embed_cone_over_line", "realize_triangle_flat", "segment_point",
    "tangent_angle_flat", "tau_flat",
    "CurvatureParam", "HingeShape", "OneSidedResult", "Orientation",
    "SignedAngle", "SolvedSide", "TriangleShape", "angle_from_sides",
    "diameter_of", "extended_loc_margin", "flat_limit_gap", "one_sided_x",
    "side_from_hinge",
    "CheckReport", "Violation",
    "Direction", "FiniteSpaceTable", "SpaceHandle", "TableSpace",
    "TimelikeCurve", "exp_at", "geodesic", "load_finite_space", "log_at",
    "make_builtin", "save_finite_space", "table_from_samples",
    "validate_finite_space",
]
