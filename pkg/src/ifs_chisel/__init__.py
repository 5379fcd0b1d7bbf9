"""Planar iterated function systems with invariant distance-sum regions.

For any finite family of affine contractions, the toolkit builds the
multi-foci ellipse that every map sends into itself, then computes the
attractor two ways: forward Hausdorff iteration of the Hutchinson operator
from an arbitrary seed, and monotone deletion iteration that chisels the
invariant region down stage by stage. Rasters, point CSVs, Hausdorff
diagnostics, and a Maxwell-style locus renderer round out the pipeline.
"""

__version__ = "0.1.0"

from .errors import (
    ChiselError,
    DegenerateRegion,
    DegenerateTrace,
    EmptyInput,
    EmptyRaster,
    EmptyStage,
    EmptySystem,
    GridMismatch,
    InvalidRatio,
    IoFailure,
    NonInvertibleMap,
    NotAContraction,
    ParseError,
    ResourceLimit,
    SingularSystem,
    UnknownName,
)
from .geometry import (
    MAX_CONTRACTION_RATIO,
    AffineMap,
    Box,
    apply_affine,
    as_point_set,
    compose,
    contraction_ratio,
    fixed_point,
    rotation_similitude,
)
from .ifs import (
    BUILTIN_NAMES,
    IfsSystem,
    builtin,
    hutchinson,
    parse_ifs,
    quantize_dedup,
    serialize_ifs,
)
from .region import (
    InvarianceReport,
    InvariantEllipse,
    bounding_box,
    contains,
    custom_region,
    distance_sum,
    ellipse_params,
    sample_points,
    verify_invariance,
)
from .discrete import (
    Raster,
    hausdorff_distance,
    hausdorff_distance_bruteforce,
    raster_points,
    raster_subset,
    rasterize_region,
)
from .iterate import (
    DEFAULT_POINT_CAP,
    ConvergenceReport,
    IterationTrace,
    attractor_estimate,
    convergence_report,
    deletion_iterate,
    forward_iterate,
    trace_csv,
)
from .render import (
    LocusRasters,
    format_float,
    parse_pbm,
    pbm_bytes,
    points_csv_bytes,
    read_points_csv,
    render_locus,
    write_pbm,
    write_points_csv,
)
from .rng import splitmix64, uniform01

__all__ = [
    "AffineMap",
    "Box",
    "BUILTIN_NAMES",
    "ChiselError",
    "ConvergenceReport",
    "DEFAULT_POINT_CAP",
    "DegenerateRegion",
    "DegenerateTrace",
    "EmptyInput",
    "EmptyRaster",
    "EmptyStage",
    "EmptySystem",
    "GridMismatch",
    "IfsSystem",
    "InvalidRatio",
    "InvarianceReport",
    "InvariantEllipse",
    "IoFailure",
    "IterationTrace",
    "LocusRasters",
    "MAX_CONTRACTION_RATIO",
    "NonInvertibleMap",
    "NotAContraction",
    "ParseError",
    "Raster",
    "ResourceLimit",
    "SingularSystem",
    "UnknownName",
    "apply_affine",
    "as_point_set",
    "attractor_estimate",
    "bounding_box",
    "builtin",
    "compose",
    "contains",
    "contraction_ratio",
    "convergence_report",
    "custom_region",
    "deletion_iterate",
    "distance_sum",
    "ellipse_params",
    "fixed_point",
    "format_float",
    "forward_iterate",
    "hausdorff_distance",
    "hausdorff_distance_bruteforce",
    "hutchinson",
    "parse_ifs",
    "parse_pbm",
    "pbm_bytes",
    "points_csv_bytes",
    "quantize_dedup",
    "raster_points",
    "raster_subset",
    "rasterize_region",
    "read_points_csv",
    "render_locus",
    "rotation_similitude",
    "sample_points",
    "serialize_ifs",
    "splitmix64",
    "trace_csv",
    "uniform01",
    "verify_invariance",
    "write_pbm",
    "write_points_csv",
]
