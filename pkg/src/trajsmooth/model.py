"""Core domain types: 3D points, trajectories, and cubic coefficients.

Everything here is an immutable dataclass that validates its own invariants,
so instances can be shared freely across worker processes. No numerics beyond
validation live in this module.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MIN_POINTS_PER_TRAJECTORY = 4


class ValidationError(ValueError):
    """Base class for dataset validation failures."""


class EmptySetError(ValidationError):
    """A trajectory set must contain at least one trajectory."""


class TooShortError(ValidationError):
    """A trajectory must contain at least four points."""


class NonUniformLengthError(ValidationError):
    """All trajectories in a set must share the same point count."""


class NonFiniteError(ValidationError):
    """Coordinates must be finite (no NaN or infinity)."""


@dataclass(frozen=True, slots=True)
class Point3:
    """A 3D coordinate (unit-agnostic)."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        # normalize numpy scalars so repr round-trips and comparisons stay plain
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)):
            raise NonFiniteError(f"non-finite coordinate ({self.x!r}, {self.y!r}, {self.z!r})")

    def axis(self, index: int) -> float:
        if index == 0:
            return self.x
        if index == 1:
            return self.y
        if index == 2:
            return self.z
        raise IndexError(index)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True, slots=True)
class Trajectory:
    """An ordered path of at least four finite 3D points."""

    id: int
    points: tuple[Point3, ...]

    def __post_init__(self) -> None:
        if self.id < 0:
            raise ValidationError(f"trajectory id must be non-negative, got {self.id}")
        if len(self.points) < MIN_POINTS_PER_TRAJECTORY:
            raise TooShortError(
                f"trajectory {self.id} has {len(self.points)} points, "
                f"need at least {MIN_POINTS_PER_TRAJECTORY}"
            )

    @property
    def point_count(self) -> int:
        return len(self.points)


@dataclass(frozen=True, slots=True)
class TrajectorySet:
    """A batch of trajectories sharing a common point count.

    Uniform length is required by the batched (matrix) code paths; ragged
    inputs are rejected rather than padded.
    """

    trajectories: tuple[Trajectory, ...]

    def __post_init__(self) -> None:
        if not self.trajectories:
            raise EmptySetError("trajectory set is empty")
        first = self.trajectories[0].point_count
        for tr in self.trajectories:
            if tr.point_count != first:
                raise NonUniformLengthError(
                    f"trajectory {tr.id} has {tr.point_count} points, expected {first}"
                )

    @property
    def trajectory_count(self) -> int:
        return len(self.trajectories)

    @property
    def point_count(self) -> int:
        return self.trajectories[0].point_count


@dataclass(frozen=True, slots=True)
class CubicCoeffs:
    """Vector-valued cubic u(t) = a*t^3 + b*t^2 + c*t + d, t in [0, 1].

    The polynomial applies independently per axis. The derivative helpers
    below are the single source of truth for slope/curvature values, so that
    chained construction and verification agree bit for bit.
    """

    a: Point3
    b: Point3
    c: Point3
    d: Point3

    def axis(self, index: int) -> tuple[float, float, float, float]:
        return (
            self.a.axis(index),
            self.b.axis(index),
            self.c.axis(index),
            self.d.axis(index),
        )

    def value_at(self, t: float) -> Point3:
        """Horner evaluation per axis."""
        return Point3(
            ((self.a.x * t + self.b.x) * t + self.c.x) * t + self.d.x,
            ((self.a.y * t + self.b.y) * t + self.c.y) * t + self.d.y,
            ((self.a.z * t + self.b.z) * t + self.c.z) * t + self.d.z,
        )

    def start_slope(self) -> Point3:
        """u'(0) = c."""
        return self.c

    def start_curvature(self) -> Point3:
        """u''(0) = 2b."""
        return Point3(2.0 * self.b.x, 2.0 * self.b.y, 2.0 * self.b.z)

    def end_slope(self) -> Point3:
        """u'(1) = 3a + 2b + c."""
        return Point3(
            3.0 * self.a.x + 2.0 * self.b.x + self.c.x,
            3.0 * self.a.y + 2.0 * self.b.y + self.c.y,
            3.0 * self.a.z + 2.0 * self.b.z + self.c.z,
        )

    def end_curvature(self) -> Point3:
        """u''(1) = 6a + 2b."""
        return Point3(
            6.0 * self.a.x + 2.0 * self.b.x,
            6.0 * self.a.y + 2.0 * self.b.y,
            6.0 * self.a.z + 2.0 * self.b.z,
        )


class SegmentKind(enum.Enum):
    GROUP = "group"
    BRIDGE = "bridge"


@dataclass(frozen=True, slots=True)
class SegmentSpec:
    """Identity of one two-point segment within a trajectory.

    ``segment_index`` is the 1-based position within a four-point group
    (1..3); bridge segments between disjoint groups carry index 0.
    """

    trajectory_id: int
    group_index: int
    segment_index: int
    start_point_index: int
    end_point_index: int
    kind: SegmentKind = field(default=SegmentKind.GROUP)

    def __post_init__(self) -> None:
        if self.end_point_index != self.start_point_index + 1:
            raise ValidationError(
                f"segment must span adjacent points, got "
                f"{self.start_point_index}..{self.end_point_index}"
            )
        if self.kind is SegmentKind.GROUP and self.segment_index not in (1, 2, 3):
            raise ValidationError(f"group segment index must be 1..3, got {self.segment_index}")
        if self.kind is SegmentKind.BRIDGE and self.segment_index != 0:
            raise ValidationError("bridge segments carry segment index 0")


def _as_point(value) -> Point3:
    if isinstance(value, Point3):
        return value
    x, y, z = value
    return Point3(float(x), float(y), float(z))


def validate_set(raw: Iterable[tuple[int, Sequence]]) -> TrajectorySet:
    """Build a validated TrajectorySet from (id, point-sequence) pairs.

    Each point may be a Point3 or any (x, y, z) triple. Raises EmptySetError,
    TooShortError, NonUniformLengthError, or NonFiniteError on bad input.
    Validating an already-valid set reproduces it exactly.
    """
    trajectories = tuple(
        Trajectory(int(traj_id), tuple(_as_point(p) for p in points))
        for traj_id, points in raw
    )
    if not trajectories:
        raise EmptySetError("no trajectories supplied")
    return TrajectorySet(trajectories)
