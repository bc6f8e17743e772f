"""Per-segment cubic construction and Bezier blending.

Every group of four consecutive trajectory points gets one Bezier curve and
three cubic segments. Each segment cubic u(t) = a*t^3 + b*t^2 + c*t + d on
t in [0, 1] is pinned down by four conditions — u(0) = P_start,
u(1) = P_end, u'(0) = m, u''(0) = q — whose solution is linear in the
inputs and therefore expressible as a constant 4x5 matrix applied to
(P_end, P_start, m, q, 1):

    a = P_end - P_start - m - q/2
    b = q/2
    c = m
    d = P_start

The slope/curvature targets (m, q) come either from the group Bezier's start
derivatives (every segment alike, which keeps the stacked input vectors
uniform) or from the end of the previous segment (exact C1/C2 continuity
along the whole trajectory). The blended output v = alpha*b + beta*u is
itself a cubic: the group Bezier is reparameterized onto the segment's local
parameter and summed with u coefficient-wise.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .bezier import BezierCubic, derivatives_at_zero, to_power_basis
from .counters import OpCounter
from .evaluator import reparameterize_cubic
from .model import (
    CubicCoeffs,
    Point3,
    SegmentKind,
    SegmentSpec,
    Trajectory,
    TrajectorySet,
)

#: Rows give (a, b, c, d); columns weight (P_end, P_start, m, q, 1).
CONSTRUCTION_MATRIX = np.array(
    [
        [1.0, -1.0, -1.0, -0.5, 0.0],
        [0.0, 0.0, 0.0, 0.5, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0],
    ]
)
CONSTRUCTION_MATRIX.setflags(write=False)

# Hand-counted scalar multiply-adds per call, all three axes included.
BEZIER_MADDS = 24
SEED_BEZIER_MADDS = 3
SEED_CHAIN_MADDS = 15
COEFF_MADDS = 15
REPARAM_MADDS = 51
BLEND_MADDS = 24

BUILD_MADDS = OpCounter()


class MissingPredecessorError(ValueError):
    """Chained seeding requested for a non-initial segment with no predecessor."""


class IncompatibleLengthError(ValueError):
    """Trajectory point count fails the grouping's modular condition."""


class BlendWeightsWarning(UserWarning):
    """alpha + beta != 1: the blend no longer interpolates group endpoints."""


class SeedMode(enum.Enum):
    #: every segment of a group starts from the group Bezier's derivatives
    BEZIER_START = "bezier-start"
    #: each segment continues the previous one's end slope and curvature
    CHAINED = "chained"


class GroupingMode(enum.Enum):
    #: groups share boundary points (stride 3); needs S % 3 == 1
    OVERLAP = "overlap"
    #: groups tile the points (stride 4) with chained bridges; needs S % 4 == 0
    DISJOINT = "disjoint"


@dataclass(frozen=True)
class BlendParams:
    """Blend weights for v = alpha * bezier + beta * spline."""

    alpha: float = 0.5
    beta: float = 0.5

    def __post_init__(self) -> None:
        for name, w in (("alpha", self.alpha), ("beta", self.beta)):
            if not 0.0 < w < 1.0:
                raise ValueError(f"{name} must lie strictly inside (0, 1), got {w}")
        if self.alpha + self.beta != 1.0:
            warnings.warn(
                f"alpha + beta = {self.alpha + self.beta!r} != 1: blended curves will "
                "not interpolate group endpoints",
                BlendWeightsWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class SegmentCurve:
    """One trajectory segment: raw spline u plus blended curve v."""

    spec: SegmentSpec
    u: CubicCoeffs
    v: CubicCoeffs


@dataclass(frozen=True)
class BuiltSet:
    """All segment curves of a trajectory set, in trajectory order."""

    trajectories: tuple[tuple[SegmentCurve, ...], ...]
    grouping: GroupingMode
    seed_mode: SeedMode
    blend: BlendParams
    #: multiply-adds spent building this set
    madds: int

    @property
    def trajectory_count(self) -> int:
        return len(self.trajectories)

    @property
    def segments_per_trajectory(self) -> int:
        return len(self.trajectories[0])

    @property
    def segment_count(self) -> int:
        return sum(len(curves) for curves in self.trajectories)

    def blended_per_trajectory(self) -> list[list[CubicCoeffs]]:
        return [[curve.v for curve in curves] for curves in self.trajectories]


def group_count(point_count: int, grouping: GroupingMode) -> int:
    """Number of 4-point groups a trajectory of ``point_count`` points yields."""
    if grouping is GroupingMode.OVERLAP:
        if point_count < 4 or point_count % 3 != 1:
            raise IncompatibleLengthError(
                f"overlap grouping needs point count == 1 (mod 3) and >= 4, got {point_count}"
            )
        return (point_count - 1) // 3
    if point_count < 4 or point_count % 4 != 0:
        raise IncompatibleLengthError(
            f"disjoint grouping needs point count == 0 (mod 4) and >= 4, got {point_count}"
        )
    return point_count // 4


def segment_count(point_count: int, grouping: GroupingMode) -> int:
    """Total segments (bridges included): always point_count - 1."""
    n = group_count(point_count, grouping)
    if grouping is GroupingMode.OVERLAP:
        return 3 * n
    return 3 * n + (n - 1)


def compute_seed(
    group_bezier: BezierCubic,
    previous: Optional[CubicCoeffs],
    mode: SeedMode,
    segment_index: int = 1,
) -> tuple[Point3, Point3]:
    """Target start slope m and start curvature q for the next segment.

    BEZIER_START reads the group Bezier's derivatives at s=0 regardless of
    position. CHAINED does so only for the very first segment of a
    trajectory; afterwards it carries over the previous segment's end slope
    u'(1) = 3a + 2b + c and end curvature u''(1) = 6a + 2b.
    """
    if mode is SeedMode.CHAINED and previous is not None:
        BUILD_MADDS.add(SEED_CHAIN_MADDS)
        return previous.end_slope(), previous.end_curvature()
    if mode is SeedMode.CHAINED and segment_index > 1:
        raise MissingPredecessorError(
            f"chained segment {segment_index} needs the previous segment's cubic"
        )
    slope, curvature = derivatives_at_zero(group_bezier)
    BUILD_MADDS.add(SEED_BEZIER_MADDS)
    return slope, curvature


def segment_coeffs(p_start: Point3, p_end: Point3, m: Point3, q: Point3) -> CubicCoeffs:
    """Cubic through (p_start, p_end) with start slope m and start curvature q.

    Scalar form of the constant construction matrix, applied per axis.
    """
    BUILD_MADDS.add(COEFF_MADDS)
    ax = tuple(
        _segment_axis(p_start.axis(i), p_end.axis(i), m.axis(i), q.axis(i)) for i in range(3)
    )
    return CubicCoeffs(
        Point3(ax[0][0], ax[1][0], ax[2][0]),
        Point3(ax[0][1], ax[1][1], ax[2][1]),
        Point3(ax[0][2], ax[1][2], ax[2][2]),
        Point3(ax[0][3], ax[1][3], ax[2][3]),
    )


def _segment_axis(ps: float, pe: float, m: float, q: float) -> tuple[float, float, float, float]:
    a = ((pe - ps) - m) - 0.5 * q
    b = 0.5 * q
    c = m
    d = ps
    return a, b, c, d


def blend_coeffs(bezier_piece: CubicCoeffs, u: CubicCoeffs, blend: BlendParams) -> CubicCoeffs:
    """Coefficient-wise v = alpha * bezier_piece + beta * u."""
    BUILD_MADDS.add(BLEND_MADDS)
    return CubicCoeffs(
        _mix(bezier_piece.a, u.a, blend),
        _mix(bezier_piece.b, u.b, blend),
        _mix(bezier_piece.c, u.c, blend),
        _mix(bezier_piece.d, u.d, blend),
    )


def _mix(p: Point3, r: Point3, blend: BlendParams) -> Point3:
    return Point3(
        blend.alpha * p.x + blend.beta * r.x,
        blend.alpha * p.y + blend.beta * r.y,
        blend.alpha * p.z + blend.beta * r.z,
    )


def build_group(
    points: Sequence[Point3],
    mode: SeedMode,
    blend: BlendParams,
    previous: Optional[CubicCoeffs] = None,
    *,
    trajectory_id: int = 0,
    group_index: int = 0,
    base_point_index: int = 0,
) -> list[SegmentCurve]:
    """Three blended segments for one group of four points.

    ``previous`` is the raw cubic of the segment just before this group, if
    any; chained seeding continues from it across the group boundary. The
    group Bezier is reparameterized onto uniform thirds, mapping segment k
    to the Bezier parameter range [(k-1)/3, k/3].
    """
    if len(points) != 4:
        raise ValueError(f"a group needs exactly 4 points, got {len(points)}")
    bez = to_power_basis(points[0], points[1], points[2], points[3])
    BUILD_MADDS.add(BEZIER_MADDS)
    bez_cubic = bez.as_cubic()

    curves: list[SegmentCurve] = []
    prev = previous
    for k in (1, 2, 3):
        m, q = compute_seed(bez, prev, mode, segment_index=k)
        u = segment_coeffs(points[k - 1], points[k], m, q)
        piece = reparameterize_cubic(bez_cubic, (k - 1) / 3.0, 1.0 / 3.0)
        BUILD_MADDS.add(REPARAM_MADDS)
        v = blend_coeffs(piece, u, blend)
        spec = SegmentSpec(
            trajectory_id=trajectory_id,
            group_index=group_index,
            segment_index=k,
            start_point_index=base_point_index + (k - 1),
            end_point_index=base_point_index + k,
            kind=SegmentKind.GROUP,
        )
        curves.append(SegmentCurve(spec, u, v))
        prev = u
    return curves


def _bridge_segment(
    points: Sequence[Point3],
    previous: CubicCoeffs,
    *,
    trajectory_id: int,
    gap_index: int,
    start_point_index: int,
) -> SegmentCurve:
    # Bridges always chain and never blend: there is no spanning Bezier for
    # the two points straddling a disjoint group boundary.
    BUILD_MADDS.add(SEED_CHAIN_MADDS)
    m, q = previous.end_slope(), previous.end_curvature()
    u = segment_coeffs(points[0], points[1], m, q)
    spec = SegmentSpec(
        trajectory_id=trajectory_id,
        group_index=gap_index,
        segment_index=0,
        start_point_index=start_point_index,
        end_point_index=start_point_index + 1,
        kind=SegmentKind.BRIDGE,
    )
    return SegmentCurve(spec, u, u)


def build_trajectory(
    trajectory: Trajectory,
    grouping: GroupingMode,
    mode: SeedMode,
    blend: BlendParams,
) -> list[SegmentCurve]:
    """All segment curves of one trajectory, ordered along the points.

    Overlap grouping strides by 3 so adjacent groups share a boundary point;
    disjoint grouping strides by 4 and inserts one chained, unblended bridge
    segment per inter-group gap. Either way every adjacent point pair is
    covered exactly once (point_count - 1 segments).
    """
    points = trajectory.points
    n = group_count(len(points), grouping)
    curves: list[SegmentCurve] = []
    prev: Optional[CubicCoeffs] = None
    for g in range(n):
        if grouping is GroupingMode.OVERLAP:
            base = 3 * g
        else:
            base = 4 * g
            if g > 0:
                assert prev is not None
                bridge = _bridge_segment(
                    points[base - 1 : base + 1],
                    prev,
                    trajectory_id=trajectory.id,
                    gap_index=g - 1,
                    start_point_index=base - 1,
                )
                curves.append(bridge)
                prev = bridge.u
        group = build_group(
            points[base : base + 4],
            mode,
            blend,
            prev,
            trajectory_id=trajectory.id,
            group_index=g,
            base_point_index=base,
        )
        curves.extend(group)
        prev = group[-1].u
    return curves


def build_set(
    trajectory_set: TrajectorySet,
    grouping: GroupingMode = GroupingMode.OVERLAP,
    mode: SeedMode = SeedMode.CHAINED,
    blend: Optional[BlendParams] = None,
) -> BuiltSet:
    """Build every trajectory in the set; records multiply-adds spent."""
    if blend is None:
        blend = BlendParams()
    before = BUILD_MADDS.value
    built = tuple(
        tuple(build_trajectory(tr, grouping, mode, blend)) for tr in trajectory_set.trajectories
    )
    return BuiltSet(built, grouping, mode, blend, BUILD_MADDS.value - before)
