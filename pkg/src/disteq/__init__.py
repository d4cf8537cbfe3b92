"""Numerical toolkit for distance-equilibrium measures on curves, clouds and graphs."""

__version__ = "0.1.0"

from ._backend import backend_name
from .curves import (
    CurveSamples,
    SupportCurve,
    curvature_at,
    curve_length,
    curve_point,
    eval_support,
    min_max_curvature,
    sample_uniform_parameter,
)
from .energy import (
    CrossCheckReport,
    EnergyResult,
    OptimalityReport,
    boundary_support_fraction,
    check_optimality_conditions,
    cross_validate_equilibrium,
    maximize_energy,
)
from .equilibrium import (
    EquilibriumSolution,
    MagnitudeResult,
    constancy_report,
    gross_constant,
    solve_equilibrium,
    solve_linear_system,
    solve_magnitude,
)
from .errors import (
    DegeneratePolygon,
    Disconnected,
    DisteqError,
    DuplicatePoints,
    EmptyInput,
    MaskLengthMismatch,
    NoPositiveNormalization,
    NotProbability,
    NotStrictlyConvex,
    SearchBudgetExceeded,
    SingularDistanceMatrix,
    SingularSystem,
    TooCoarse,
)
from .graphs import (
    GraphCurvature,
    GraphSpec,
    all_pairs_distances,
    graph_curvature,
    graph_to_metric_space,
    read_edge_list,
)
from .spaces import (
    FiniteMetricSpace,
    KernelKind,
    apply_kernel,
    from_curve,
    from_point_cloud,
    from_polygon_grid,
    read_point_cloud_csv,
    read_polygon_csv,
)
from .svgplot import render_svg
from .verify import (
    DensityCurvatureTable,
    FlatCurveReport,
    NearConstancyReport,
    SweepReport,
    curvature_measure_variation,
    curvature_sweep,
    density_vs_curvature,
    flat_curve_demo,
)

__all__ = [
    "__version__",
    "backend_name",
    # curves
    "SupportCurve",
    "CurveSamples",
    "eval_support",
    "curve_point",
    "curvature_at",
    "curve_length",
    "min_max_curvature",
    "sample_uniform_parameter",
    # spaces
    "FiniteMetricSpace",
    "KernelKind",
    "apply_kernel",
    "from_curve",
    "from_point_cloud",
    "from_polygon_grid",
    "read_point_cloud_csv",
    "read_polygon_csv",
    # equilibrium and magnitude
    "EquilibriumSolution",
    "MagnitudeResult",
    "solve_linear_system",
    "solve_equilibrium",
    "constancy_report",
    "gross_constant",
    "solve_magnitude",
    # energy
    "EnergyResult",
    "OptimalityReport",
    "CrossCheckReport",
    "maximize_energy",
    "check_optimality_conditions",
    "boundary_support_fraction",
    "cross_validate_equilibrium",
    # graphs
    "GraphSpec",
    "GraphCurvature",
    "all_pairs_distances",
    "graph_curvature",
    "graph_to_metric_space",
    "read_edge_list",
    # verification experiments
    "NearConstancyReport",
    "DensityCurvatureTable",
    "SweepReport",
    "FlatCurveReport",
    "curvature_measure_variation",
    "density_vs_curvature",
    "curvature_sweep",
    "flat_curve_demo",
    # rendering
    "render_svg",
    # errors
    "DisteqError",
    "NotStrictlyConvex",
    "DuplicatePoints",
    "DegeneratePolygon",
    "TooCoarse",
    "Disconnected",
    "MaskLengthMismatch",
    "NotProbability",
    "EmptyInput",
    "SingularSystem",
    "NoPositiveNormalization",
    "SingularDistanceMatrix",
    "SearchBudgetExceeded",
]
