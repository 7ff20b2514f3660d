"""Spherical circle patterns with prescribed total geodesic curvature.

Thin wrapper around the C++ core: build pattern graphs, check the subset
feasibility condition on the targets, and solve for the radii by the
curvature flow or Newton's method.
"""

from spcp._core import (
    BigonMeasurement,
    CurvatureJacobian,
    CurvatureState,
    FeasibilityReport,
    FlowConfig,
    Integrator,
    PatternEdge,
    PatternGraph,
    PatternParseError,
    SolveResult,
    ValidationReport,
    check_exhaustive,
    check_flow,
    curvatures,
    emit_pattern,
    estimate_rate,
    example_names,
    example_pattern_file,
    half_angle,
    integrate_flow,
    integrate_flow_radius,
    jacobian,
    k_from_r,
    measure,
    newton_solve,
    parse_pattern,
    potential,
    r_from_k,
    subset_slack,
    validate,
)

__all__ = [
    "BigonMeasurement",
    "CurvatureJacobian",
    "CurvatureState",
    "FeasibilityReport",
    "FlowConfig",
    "Integrator",
    "PatternEdge",
    "PatternGraph",
    "PatternParseError",
    "SolveResult",
    "ValidationReport",
    "check_exhaustive",
    "check_flow",
    "curvatures",
    "emit_pattern",
    "estimate_rate",
    "example_names",
    "example_pattern_file",
    "half_angle",
    "integrate_flow",
    "integrate_flow_radius",
    "jacobian",
    "k_from_r",
    "measure",
    "newton_solve",
    "parse_pattern",
    "potential",
    "r_from_k",
    "subset_slack",
    "validate",
]

__version__ = "0.1.0"
