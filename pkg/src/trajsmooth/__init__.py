"""Trajectory smoothing: blended Bezier/cubic-spline curves with batched evaluation."""

from .bezier import BezierCubic, DomainError, derivatives_at_zero, evaluate, to_power_basis
from .builder import (
    CONSTRUCTION_MATRIX,
    BlendParams,
    BlendWeightsWarning,
    BuiltSet,
    GroupingMode,
    IncompatibleLengthError,
    MissingPredecessorError,
    SeedMode,
    SegmentCurve,
    build_group,
    build_set,
    build_trajectory,
    compute_seed,
    group_count,
    segment_coeffs,
    segment_count,
)
from .evaluator import (
    CoeffMatrix,
    InconsistentVError,
    JunctionMismatchWarning,
    Layout,
    PowerMatrix,
    SampleGrid,
    ShapeMismatchError,
    eval_batch,
    power_matrix,
    reparameterize_cubic,
    sample_polyline,
    stitch,
)
from .io import (
    DatasetFormat,
    GapError,
    ParseError,
    SampleFormat,
    make_synthetic_set,
    read_trajectories,
    write_report,
    write_samples,
    write_trajectories,
)
from .model import (
    CubicCoeffs,
    EmptySetError,
    NonFiniteError,
    NonUniformLengthError,
    Point3,
    SegmentKind,
    SegmentSpec,
    TooShortError,
    Trajectory,
    TrajectorySet,
    ValidationError,
    validate_set,
)
from .parallel import (
    InsufficientCoresWarning,
    Partition,
    PipelineJob,
    ScalingReport,
    ScalingRow,
    bench_strong,
    bench_weak,
    partition,
    run_parallel,
    smooth_and_sample,
)
from .sparse import (
    AllocationLimitError,
    GlobalMatrix,
    assemble_global,
    bench_block_vs_dense,
    density,
    expand_csr,
    expand_dense,
    footprint_density,
    matvec_block,
    matvec_dense,
    stacked_vector,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # model
    "Point3",
    "Trajectory",
    "TrajectorySet",
    "CubicCoeffs",
    "SegmentSpec",
    "SegmentKind",
    "validate_set",
    "ValidationError",
    "EmptySetError",
    "TooShortError",
    "NonUniformLengthError",
    "NonFiniteError",
    # bezier
    "BezierCubic",
    "to_power_basis",
    "evaluate",
    "derivatives_at_zero",
    "DomainError",
    # builder
    "CONSTRUCTION_MATRIX",
    "SeedMode",
    "GroupingMode",
    "BlendParams",
    "BlendWeightsWarning",
    "SegmentCurve",
    "BuiltSet",
    "build_group",
    "build_trajectory",
    "build_set",
    "compute_seed",
    "segment_coeffs",
    "group_count",
    "segment_count",
    "MissingPredecessorError",
    "IncompatibleLengthError",
    # evaluator
    "PowerMatrix",
    "CoeffMatrix",
    "SampleGrid",
    "Layout",
    "power_matrix",
    "eval_batch",
    "reparameterize_cubic",
    "stitch",
    "sample_polyline",
    "ShapeMismatchError",
    "InconsistentVError",
    "JunctionMismatchWarning",
    # sparse
    "GlobalMatrix",
    "assemble_global",
    "stacked_vector",
    "matvec_block",
    "matvec_dense",
    "expand_dense",
    "expand_csr",
    "density",
    "footprint_density",
    "bench_block_vs_dense",
    "AllocationLimitError",
    # parallel
    "Partition",
    "partition",
    "run_parallel",
    "smooth_and_sample",
    "PipelineJob",
    "ScalingRow",
    "ScalingReport",
    "bench_strong",
    "bench_weak",
    "InsufficientCoresWarning",
    # io
    "DatasetFormat",
    "SampleFormat",
    "read_trajectories",
    "write_trajectories",
    "write_samples",
    "write_report",
    "make_synthetic_set",
    "ParseError",
    "GapError",
]
