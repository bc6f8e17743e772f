"""Independent oracles and small utilities shared by the test modules.

The oracles deliberately avoid the library's own formulas: the Bernstein
oracle evaluates the basis polynomials directly, and the cubic-condition
oracle solves the defining 4x4 linear system numerically instead of using
the closed-form construction rows.
"""

from __future__ import annotations

import math

import numpy as np

from trajsmooth import Point3


def bernstein_eval(p1: float, p2: float, p3: float, p4: float, s) -> np.ndarray:
    """Direct cubic Bernstein-basis evaluation, one scalar axis."""
    s = np.asarray(s, dtype=np.float64)
    r = 1.0 - s
    return (
        math.comb(3, 0) * r**3 * p1
        + math.comb(3, 1) * s * r**2 * p2
        + math.comb(3, 2) * s**2 * r * p3
        + math.comb(3, 3) * s**3 * p4
    )


def solve_cubic_conditions(ps: float, pe: float, m: float, q: float) -> np.ndarray:
    """Brute-force (a, b, c, d) with u(0)=ps, u(1)=pe, u'(0)=m, u''(0)=q.

    Rows encode the four conditions applied to u(t) = a t^3 + b t^2 + c t + d.
    """
    system = np.array(
        [
            [0.0, 0.0, 0.0, 1.0],  # u(0)
            [1.0, 1.0, 1.0, 1.0],  # u(1)
            [0.0, 0.0, 1.0, 0.0],  # u'(0)
            [0.0, 2.0, 0.0, 0.0],  # u''(0)
        ]
    )
    return np.linalg.solve(system, np.array([ps, pe, m, q], dtype=np.float64))


def horner(coeffs, t: float) -> float:
    """Scalar Horner evaluation of (a, b, c, d) at t."""
    a, b, c, d = coeffs
    return ((a * t + b) * t + c) * t + d


def random_points(rng: np.random.Generator, count: int, scale: float = 1.0) -> list[Point3]:
    return [Point3(*row) for row in rng.uniform(-scale, scale, size=(count, 3))]


def line_points(count: int, direction=(0.25, 0.5, -0.125)) -> list[Point3]:
    """Exactly representable, equally spaced collinear points through the origin.

    Each coordinate is k * direction with power-of-two components, so the
    points sit on the line with zero rounding error.
    """
    dx, dy, dz = direction
    return [Point3(k * dx, k * dy, k * dz) for k in range(count)]


def perpendicular_distances(samples: np.ndarray, origin, direction) -> np.ndarray:
    """Distance of each (n, 3) sample from the line origin + t*direction."""
    rel = samples - np.asarray(origin, dtype=np.float64)
    unit = np.asarray(direction, dtype=np.float64)
    unit = unit / np.linalg.norm(unit)
    along = rel @ unit
    return np.linalg.norm(rel - np.outer(along, unit), axis=1)
