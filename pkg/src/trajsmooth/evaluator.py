"""Batched cubic evaluation on a uniform tick grid.

The value of a cubic at one tick is a dot product

    a*t^3 + b*t^2 + c*t + d = (a, b, c, d) . (t^3, t^2, t, 1)

so evaluating a stack of cubics at all ticks 0, 1/V, ..., 1 is a single
product of an (rows x 4) coefficient matrix with the cached 4 x (V+1) power
matrix. The sample grid is computed strictly in the order cubic term first,
then quadratic, linear, constant; the per-entry arithmetic is therefore
independent of how rows are batched, which makes trajectory-major and
segment-position-major layouts bitwise comparable and parallel runs
reproducible.

The power matrix is constant for a given tick count and is built at most
once per process; concurrent first accesses are serialized.
"""

from __future__ import annotations

import enum
import threading
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .counters import OpCounter
from .model import CubicCoeffs, Point3

JUNCTION_TOLERANCE = 1e-9

#: Multiply-adds per evaluated sample (one 4-term dot product).
MADDS_PER_SAMPLE = 4

MADDS = OpCounter()


class InconsistentVError(ValueError):
    """Sample grids disagree on tick count."""


class ShapeMismatchError(ValueError):
    """Coefficient and power matrices have incompatible shapes."""


class JunctionMismatchWarning(UserWarning):
    """Adjacent segments disagree at a shared knot beyond tolerance."""


class Layout(enum.Enum):
    #: one row per trajectory at a fixed segment position
    EULERIAN = "eulerian"
    #: one row per segment of a single trajectory
    LAGRANGIAN = "lagrangian"


@dataclass(frozen=True)
class PowerMatrix:
    """4 x (V+1) matrix whose column j holds ((j/V)^3, (j/V)^2, j/V, 1)."""

    tick_count: int
    entries: np.ndarray

    @property
    def sample_count(self) -> int:
        return self.tick_count + 1


@dataclass(frozen=True)
class CoeffMatrix:
    """Scalar (one-axis) cubic coefficients, one (a, b, c, d) row per curve."""

    layout: Layout
    rows: np.ndarray

    def __post_init__(self) -> None:
        if self.rows.ndim != 2 or self.rows.shape[1] != 4 or self.rows.shape[0] == 0:
            raise ShapeMismatchError(f"coefficient matrix must be (rows, 4), got {self.rows.shape}")


@dataclass(frozen=True)
class SampleGrid:
    """rows x (V+1) values; row i samples cubic i at every tick."""

    values: np.ndarray

    @property
    def row_count(self) -> int:
        return self.values.shape[0]

    @property
    def sample_count(self) -> int:
        return self.values.shape[1]


_power_cache: dict[int, PowerMatrix] = {}
_power_lock = threading.Lock()
_power_constructions = 0


def power_matrix(tick_count: int) -> PowerMatrix:
    """Return the cached power matrix for ``tick_count`` ticks (V >= 1)."""
    if tick_count < 1:
        raise ValueError(f"tick count must be >= 1, got {tick_count}")
    global _power_constructions
    with _power_lock:
        cached = _power_cache.get(tick_count)
        if cached is None:
            ticks = np.arange(tick_count + 1, dtype=np.float64) / float(tick_count)
            entries = np.vstack([ticks**3, ticks**2, ticks, np.ones_like(ticks)])
            entries.setflags(write=False)
            cached = PowerMatrix(tick_count, entries)
            _power_cache[tick_count] = cached
            _power_constructions += 1
        return cached


def power_matrix_constructions() -> int:
    """Number of power-matrix constructions performed by this process."""
    return _power_constructions


def clear_power_matrix_cache() -> None:
    """Drop cached power matrices (testing hook)."""
    global _power_constructions
    with _power_lock:
        _power_cache.clear()
        _power_constructions = 0


def eval_batch(coeffs: CoeffMatrix, powers: PowerMatrix) -> SampleGrid:
    """Sample every cubic row at every tick.

    Entry (i, j) equals a_i*t_j^3 + b_i*t_j^2 + c_i*t_j + d_i, accumulated
    cubic term first. Column 0 therefore reproduces d_i exactly and column V
    reproduces a_i + b_i + c_i + d_i (left-associated sum) exactly.
    """
    rows = coeffs.rows
    entries = powers.entries
    if entries.shape != (4, powers.tick_count + 1):
        raise ShapeMismatchError(f"power matrix has shape {entries.shape}")
    values = rows[:, 0:1] * entries[0]
    values += rows[:, 1:2] * entries[1]
    values += rows[:, 2:3] * entries[2]
    values += rows[:, 3:4] * entries[3]
    MADDS.add(MADDS_PER_SAMPLE * rows.shape[0] * entries.shape[1])
    return SampleGrid(values)


def reparameterize_cubic(p: CubicCoeffs, offset: float, scale: float) -> CubicCoeffs:
    """Return the coefficients of q(t) = p(offset + scale*t).

    Used to fold a group-wide curve onto a segment's local parameter, e.g.
    mapping segment k of a group onto thirds of the group curve.
    """
    ax, ay, az = _reparam_axis(p.axis(0), offset, scale), _reparam_axis(p.axis(1), offset, scale), _reparam_axis(p.axis(2), offset, scale)
    return CubicCoeffs(
        Point3(ax[0], ay[0], az[0]),
        Point3(ax[1], ay[1], az[1]),
        Point3(ax[2], ay[2], az[2]),
        Point3(ax[3], ay[3], az[3]),
    )


def _reparam_axis(coeffs: tuple[float, float, float, float], o: float, h: float) -> tuple[float, float, float, float]:
    a, b, c, d = coeffs
    h2 = h * h
    a2 = a * (h2 * h)
    b2 = (3.0 * a * o + b) * h2
    c2 = ((3.0 * a * o + 2.0 * b) * o + c) * h
    d2 = ((a * o + b) * o + c) * o + d
    return a2, b2, c2, d2


def stitch(grids: Sequence[SampleGrid]) -> np.ndarray:
    """Join per-segment sample rows into one polyline value array.

    Rows are taken in order; each row after the very first drops its column 0
    (the knot shared with the previous row). K total rows with V+1 samples
    each yield K*V + 1 values. Junction values are checked before dropping;
    disagreement beyond tolerance records a JunctionMismatchWarning.
    """
    if not grids:
        raise ValueError("no sample grids to stitch")
    width = grids[0].sample_count
    for grid in grids:
        if grid.sample_count != width:
            raise InconsistentVError(
                f"segment grids disagree on tick count: {grid.sample_count - 1} vs {width - 1}"
            )
    rows = np.concatenate([g.values for g in grids], axis=0)
    if rows.shape[0] > 1:
        mismatch = np.max(np.abs(rows[:-1, -1] - rows[1:, 0]))
        if mismatch > JUNCTION_TOLERANCE:
            warnings.warn(
                f"segment junction mismatch {mismatch:.3e} exceeds {JUNCTION_TOLERANCE:.0e}",
                JunctionMismatchWarning,
                stacklevel=2,
            )
    out = np.empty(rows.shape[0] * (width - 1) + 1, dtype=rows.dtype)
    out[0] = rows[0, 0]
    trailing = rows[:, 1:]
    out[1:] = trailing.reshape(-1)
    return out


def lagrangian_matrix(cubics: Sequence[CubicCoeffs], axis: int) -> CoeffMatrix:
    """Coefficient rows for all segments of one trajectory, single axis."""
    rows = np.array([cubic.axis(axis) for cubic in cubics], dtype=np.float64)
    return CoeffMatrix(Layout.LAGRANGIAN, rows)


def eulerian_matrix(per_trajectory: Sequence[Sequence[CubicCoeffs]], position: int, axis: int) -> CoeffMatrix:
    """Coefficient rows for one segment position across all trajectories."""
    rows = np.array([cubics[position].axis(axis) for cubics in per_trajectory], dtype=np.float64)
    return CoeffMatrix(Layout.EULERIAN, rows)


def sample_polyline(cubics: Sequence[CubicCoeffs], tick_count: int) -> np.ndarray:
    """Evaluate and stitch one trajectory's segment cubics.

    Returns a (K*V + 1, 3) array of polyline vertices for K segments.
    """
    powers = power_matrix(tick_count)
    out = np.empty((len(cubics) * tick_count + 1, 3), dtype=np.float64)
    for axis in range(3):
        grid = eval_batch(lagrangian_matrix(cubics, axis), powers)
        out[:, axis] = stitch([grid])
    return out
