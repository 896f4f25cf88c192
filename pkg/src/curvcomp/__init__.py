"""Circumradius-comparison curvature bounds on finite metric spaces."""

from .certify import (
    CurvatureQuery,
    DefectReport,
    MidpointReport,
    TriangleDefect,
    Verdict,
    certify,
    defect_profile,
    enumerate_triples,
    local_defect_map,
    midpoint_defect,
    triangle_defect,
)
from .circumradius import (
    CandidatePolicy,
    CircumResult,
    discrete_circumradius,
    linf_circumcenter,
    lp_circumradius,
)
from .counterexamples import check_counterexample, counterexample_space, counterexample_triangle
from .generators import (
    GeneratorSpec,
    distance_comparison_curve,
    parse_generator_spec,
    sample_space,
)
from .hyperbolicity import (
    DeltaResult,
    delta_four_point,
    gromov_product,
    relaxed_npc_bound_check,
)
from .metricspace import (
    Embedding,
    FiniteMetricSpace,
    MetricValidationError,
    SideLengths,
    Triple,
    from_graph,
    load_space,
    validate_metric,
)
from .modelplane import (
    ComparisonTriangle,
    Kappa,
    ModelPoint,
    comparison_triangle,
    euclidean_circumradius,
    model_circumradius,
    model_distance,
)

__version__ = "0.1.0"
