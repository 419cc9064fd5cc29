"""Exact tete-a-tete graph toolkit."""

from .ribbon import (
    AmbiguousDirection,
    DirectedPoint,
    EulerData,
    GraphError,
    MetricPoint,
    RelativeCircle,
    RibbonGraph,
    ValidationReport,
    canonical_point,
    component_ids,
    depth_of,
    euler_genus,
    face_length,
    faces,
    induced_subgraph,
    validate,
)
from .walk import (
    PiecewiseWalkFamily,
    WalkTrace,
    boundary_mixed_safe_walk,
    boundary_safe_walk,
    mixed_safe_walk,
    safe_walk,
    symbolic_walk_family,
)
from .checker import (
    OrbitTable,
    Verdict,
    boundary_rotation,
    check_mixed_tat,
    check_pure_tat,
    check_relative_tat,
    check_walk_lemma,
    component_orbits,
    sampling_oracle,
    screw_numbers,
    twist_image,
)

__version__ = "0.1.0"
