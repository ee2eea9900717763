"""Reconstruct a simple polygon (up to similarity) from visibility angles."""

from .geom import (
    EPS_ANGLE,
    Orientation,
    PrefixTable,
    build_prefix,
    ccw_angle,
    direction,
    normalize_angle,
    orientation,
)
from .oracle import (
    AngleData,
    Polygon,
    ValidationReport,
    Violation,
    VisibilityGraph,
    is_visible_bruteforce,
    measure_angles,
    measure_angles_convex,
    random_convex_polygon,
    random_simple_polygon,
    validate_polygon,
    visibility_graph_oracle,
)
from .recon import (
    ConsistencyReport,
    FBState,
    ReconResult,
    ReconStats,
    WitnessAngles,
    detect_inconsistency,
    init_state,
    reconstruct,
    reconstruct_improved,
    reconstruct_original,
    witness_sum,
)
from .embed import (
    SimilarityReport,
    Triangulation,
    embed,
    similarity_compare,
    triangulate,
)

__all__ = [
    "EPS_ANGLE",
    "Orientation",
    "PrefixTable",
    "build_prefix",
    "ccw_angle",
    "direction",
    "normalize_angle",
    "orientation",
    "AngleData",
    "Polygon",
    "ValidationReport",
    "Violation",
    "VisibilityGraph",
    "is_visible_bruteforce",
    "measure_angles",
    "measure_angles_convex",
    "random_convex_polygon",
    "random_simple_polygon",
    "validate_polygon",
    "visibility_graph_oracle",
    "ConsistencyReport",
    "FBState",
    "ReconResult",
    "ReconStats",
    "WitnessAngles",
    "detect_inconsistency",
    "init_state",
    "reconstruct",
    "reconstruct_improved",
    "reconstruct_original",
    "witness_sum",
    "SimilarityReport",
    "Triangulation",
    "embed",
    "similarity_compare",
    "triangulate",
]

__version__ = "0.1.0"
