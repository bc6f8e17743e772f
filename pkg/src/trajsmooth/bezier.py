"""Cubic Bezier curves in the monomial (power) basis.

A four-point control polygon P1..P4 defines the Bernstein-form curve

    b(s) = sum_i binom(3, i) * s^i * (1 - s)^(3 - i) * P_{i+1},  s in [0, 1].

Expanding the basis gives b(s) = a*s^3 + b*s^2 + c*s + d with

    a = -P1 + 3*P2 - 3*P3 + P4
    b =  3*P1 - 6*P2 + 3*P3
    c = -3*P1 + 3*P2
    d =   P1

The expansion is cross-checked against direct Bernstein evaluation in the
test suite; evaluation uses Horner form to bound rounding.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import CubicCoeffs, Point3

DOMAIN_SLACK = 1e-12


class DomainError(ValueError):
    """Parameter outside [0, 1] beyond the allowed slack."""


@dataclass(frozen=True, slots=True)
class BezierCubic:
    """Power-basis coefficients of a cubic Bezier curve.

    Endpoint interpolation holds by construction: b(0) = d = P1 and
    b(1) = a + b + c + d = P4.
    """

    a: Point3
    b: Point3
    c: Point3
    d: Point3

    def as_cubic(self) -> CubicCoeffs:
        return CubicCoeffs(self.a, self.b, self.c, self.d)


def _axis_power_basis(p1: float, p2: float, p3: float, p4: float) -> tuple[float, float, float, float]:
    a = -p1 + 3.0 * p2 - 3.0 * p3 + p4
    b = 3.0 * p1 - 6.0 * p2 + 3.0 * p3
    c = 3.0 * (p2 - p1)
    d = p1
    return a, b, c, d


def to_power_basis(p1: Point3, p2: Point3, p3: Point3, p4: Point3) -> BezierCubic:
    """Convert a 4-point control polygon to power-basis coefficients."""
    ax, bx, cx, dx = _axis_power_basis(p1.x, p2.x, p3.x, p4.x)
    ay, by, cy, dy = _axis_power_basis(p1.y, p2.y, p3.y, p4.y)
    az, bz, cz, dz = _axis_power_basis(p1.z, p2.z, p3.z, p4.z)
    return BezierCubic(
        Point3(ax, ay, az),
        Point3(bx, by, bz),
        Point3(cx, cy, cz),
        Point3(dx, dy, dz),
    )


def evaluate(curve: BezierCubic, s: float) -> Point3:
    """Evaluate b(s) for s in [0, 1] (Horner form per axis)."""
    if s < -DOMAIN_SLACK or s > 1.0 + DOMAIN_SLACK:
        raise DomainError(f"curve parameter {s!r} outside [0, 1]")
    return curve.as_cubic().value_at(s)


def derivatives_at_zero(curve: BezierCubic) -> tuple[Point3, Point3]:
    """Return (b'(0), b''(0)) = (c, 2b)."""
    slope = curve.c
    curvature = Point3(2.0 * curve.b.x, 2.0 * curve.b.y, 2.0 * curve.b.z)
    return slope, curvature
