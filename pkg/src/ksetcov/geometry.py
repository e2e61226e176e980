"""Rectangular field geometry: sensing disks clipped to the field boundary.

The closed-form coverage model treats the per-sensor coverage probability q
as a free parameter. This module supplies the geometric side: exact
circle-rectangle intersection areas, used to compute a border-corrected q
that makes simulator output directly comparable to the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class FieldSpec:
    """Rectangular deployment field with a common sensing radius, in meters."""

    width: float
    height: float
    sensing_radius: float

    def __post_init__(self) -> None:
        if not (self.width > 0 and self.height > 0):
            raise ValueError("field dimensions must be > 0")
        if self.sensing_radius < 0:
            raise ValueError("sensing_radius must be >= 0")

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def diagonal(self) -> float:
        return math.hypot(self.width, self.height)


def _segment_area(x1: float, y1: float, x2: float, y2: float, r: float) -> float:
    """Area of the minor circular segment cut off by the chord (x1,y1)-(x2,y2).

    See https://mathworld.wolfram.com/CircularSegment.html. Callers guarantee
    the chord subtends at most a quarter circle, so the minor segment is the
    right one.
    """
    chord = math.hypot(x2 - x1, y2 - y1)
    theta = 2.0 * math.asin(min(1.0, 0.5 * chord / r))
    return 0.5 * r * r * (theta - math.sin(theta))


def _triangle_area(x1: float, y1: float, x2: float, y2: float, x3: float, y3: float) -> float:
    return 0.5 * abs(x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2))


def _quadrant_overlap(xmin: float, ymin: float, xmax: float, ymax: float, r: float) -> float:
    """Overlap of disk(origin, r) with a rectangle in the first quadrant.

    Requires 0 <= xmin <= xmax and 0 <= ymin <= ymax. Case split on which
    rectangle corners lie inside the circle; each branch sums triangles plus
    one circular segment.
    """
    if xmax <= xmin or ymax <= ymin:
        return 0.0
    r2 = r * r
    if xmin * xmin + ymin * ymin >= r2:
        return 0.0  # nearest corner already outside
    if xmax * xmax + ymax * ymax <= r2:
        return (xmax - xmin) * (ymax - ymin)  # rectangle fully inside

    bottom_right_in = xmax * xmax + ymin * ymin < r2
    top_left_in = xmin * xmin + ymax * ymax < r2

    if bottom_right_in and top_left_in:
        # only the far corner (xmax, ymax) pokes out: circle exits through
        # the top and right edges
        x1, y1 = math.sqrt(r2 - ymax * ymax), ymax
        x2, y2 = xmax, math.sqrt(r2 - xmax * xmax)
        return ((xmax - xmin) * (ymax - ymin)
                - _triangle_area(x1, y1, x2, y2, xmax, ymax)
                + _segment_area(x1, y1, x2, y2, r))
    if bottom_right_in:
        # circle exits through the left and right edges
        x1, y1 = xmin, math.sqrt(r2 - xmin * xmin)
        x2, y2 = xmax, math.sqrt(r2 - xmax * xmax)
        return (_segment_area(x1, y1, x2, y2, r)
                + _triangle_area(x1, y1, x1, ymin, xmax, ymin)
                + _triangle_area(x1, y1, x2, ymin, x2, y2))
    if top_left_in:
        # circle exits through the bottom and top edges
        x1, y1 = math.sqrt(r2 - ymin * ymin), ymin
        x2, y2 = math.sqrt(r2 - ymax * ymax), ymax
        return (_segment_area(x1, y1, x2, y2, r)
                + _triangle_area(x1, y1, xmin, y1, xmin, ymax)
                + _triangle_area(x1, y1, xmin, y2, x2, y2))
    # only the near corner (xmin, ymin) is inside: circle exits through the
    # bottom and left edges
    x1, y1 = math.sqrt(r2 - ymin * ymin), ymin
    x2, y2 = xmin, math.sqrt(r2 - xmin * xmin)
    return _segment_area(x1, y1, x2, y2, r) + _triangle_area(x1, y1, x2, y2, xmin, ymin)


def _centered_overlap(xmin: float, ymin: float, xmax: float, ymax: float, r: float) -> float:
    """Overlap of disk(origin, r) with an arbitrary rectangle, by reflecting
    and splitting the rectangle into first-quadrant pieces."""
    if xmin >= 0.0:
        if ymin >= 0.0:
            return _quadrant_overlap(xmin, ymin, xmax, ymax, r)
        if ymax <= 0.0:
            return _quadrant_overlap(xmin, -ymax, xmax, -ymin, r)
        return (_quadrant_overlap(xmin, 0.0, xmax, -ymin, r)
                + _quadrant_overlap(xmin, 0.0, xmax, ymax, r))
    if xmax <= 0.0:
        if ymin >= 0.0:
            return _quadrant_overlap(-xmax, ymin, -xmin, ymax, r)
        if ymax <= 0.0:
            return _quadrant_overlap(-xmax, -ymax, -xmin, -ymin, r)
        return (_quadrant_overlap(-xmax, 0.0, -xmin, -ymin, r)
                + _quadrant_overlap(-xmax, 0.0, -xmin, ymax, r))
    if ymin >= 0.0:
        return (_quadrant_overlap(0.0, ymin, -xmin, ymax, r)
                + _quadrant_overlap(0.0, ymin, xmax, ymax, r))
    if ymax <= 0.0:
        return (_quadrant_overlap(0.0, -ymax, -xmin, -ymin, r)
                + _quadrant_overlap(0.0, -ymax, xmax, -ymin, r))
    return (_quadrant_overlap(0.0, 0.0, -xmin, -ymin, r)
            + _quadrant_overlap(0.0, 0.0, xmax, -ymin, r)
            + _quadrant_overlap(0.0, 0.0, -xmin, ymax, r)
            + _quadrant_overlap(0.0, 0.0, xmax, ymax, r))


def disk_rect_overlap(cx: float, cy: float, r: float,
                      x0: float, y0: float, x1: float, y1: float) -> float:
    """Exact area of disk((cx, cy), r) intersected with [x0, x1] x [y0, y1]."""
    if r <= 0.0:
        return 0.0
    return _centered_overlap(x0 - cx, y0 - cy, x1 - cx, y1 - cy, r)


def clipped_coverage_fraction(field: FieldSpec, x: float, y: float) -> float:
    """Fraction of the field covered by a sensing disk centered at (x, y)."""
    return disk_rect_overlap(x, y, field.sensing_radius,
                             0.0, 0.0, field.width, field.height) / field.area


def effective_coverage_probability(field: FieldSpec, grid: int) -> float:
    """Border-corrected coverage probability, averaged over grid cell centers.

    For each of the grid x grid cell centers p, the probability that one
    uniformly deployed node covers p is area(disk(p, r) intersect field) /
    area(field); near the boundary the clipped disk shrinks this below the
    interior value pi r^2 / area. The clipped areas are exact (closed-form
    circle-rectangle intersection), so the only discretization is the grid
    average itself, which matches the simulator's own sampling grid.
    """
    if grid < 1:
        raise ValueError("grid must be >= 1")
    if field.sensing_radius == 0.0:
        return 0.0
    dx = field.width / grid
    dy = field.height / grid
    fractions = [
        clipped_coverage_fraction(field, (i + 0.5) * dx, (j + 0.5) * dy)
        for i in range(grid)
        for j in range(grid)
    ]
    return math.fsum(fractions) / (grid * grid)
