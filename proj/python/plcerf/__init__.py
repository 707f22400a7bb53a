"""PL Morse-Cerf descriptors of time-varying scalar fields."""

from ._plcerf import (
    CerfArc,
    CerfDiagram,
    Complex,
    DistanceMatrix,
    Field,
    NonGenericError,
    PlcerfConfigError,
    PlcerfDataError,
    StepSurface,
    Track,
    TrackingGraph,
    __version__,
    classify_crossings,
    classify_vertex,
    compute_cerf_diagram,
    critical_points,
    detect_crossings,
    distance,
    distance_matrix,
    ecc_lower_star,
    estimate_period,
    freudenthal_2d,
    freudenthal_3d,
    generate_gaussians,
    is_pl_morse,
    load_complex_json,
    load_field_raw,
    maxima_tracks,
    save_field_raw,
    seed_search,
    tracking_graph,
    tvecc,
)

__all__ = [
    "CerfArc",
    "CerfDiagram",
    "Complex",
    "DistanceMatrix",
    "Field",
    "NonGenericError",
    "PlcerfConfigError",
    "PlcerfDataError",
    "StepSurface",
    "Track",
    "TrackingGraph",
    "__version__",
    "classify_crossings",
    "classify_vertex",
    "compute_cerf_diagram",
    "critical_points",
    "detect_crossings",
    "distance",
    "distance_matrix",
    "ecc_lower_star",
    "estimate_period",
    "freudenthal_2d",
    "freudenthal_3d",
    "generate_gaussians",
    "is_pl_morse",
    "load_complex_json",
    "load_field_raw",
    "maxima_tracks",
    "save_field_raw",
    "seed_search",
    "tracking_graph",
    "tvecc",
]
