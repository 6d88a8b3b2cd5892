"""Exact lattice geometry: pixel counts, convex hulls and farthest pairs.

All predicates work on integer coordinates; the only floating-point operation
is the final square root of the winning squared distance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from airtype import kernels
from airtype.errors import EmptyGeometryError


class Point(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class HullPolygon:
    """Strictly convex, counter-clockwise, starting at the smallest (x, y)."""

    vertices: tuple

    def __len__(self):
        return len(self.vertices)

    def contains(self, p) -> bool:
        """Inside-or-on-boundary test with exact integer cross products."""
        px, py = int(p[0]), int(p[1])
        v = self.vertices
        n = len(v)
        if n == 1:
            return (px, py) == tuple(v[0])
        if n == 2:
            (ax, ay), (bx, by) = v
            if (bx - ax) * (py - ay) - (by - ay) * (px - ax) != 0:
                return False
            return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)
        for i in range(n):
            ax, ay = v[i]
            bx, by = v[(i + 1) % n]
            if (bx - ax) * (py - ay) - (by - ay) * (px - ax) < 0:
                return False
        return True


@dataclass(frozen=True)
class DiameterResult:
    endpoint_a: Point
    endpoint_b: Point
    dist2: int

    @property
    def dist_px(self) -> float:
        return math.sqrt(self.dist2)


def _as_points(points) -> np.ndarray:
    if isinstance(points, np.ndarray):
        arr = points
    else:
        arr = np.array([(p[0], p[1]) for p in points], dtype=np.int64)
    arr = np.asarray(arr, dtype=np.int64).reshape(-1, 2)
    if len(arr) == 0:
        raise EmptyGeometryError("point set is empty")
    # np.unique on rows sorts lexicographically by (x, y)
    return np.unique(arr, axis=0)


def pixel_count(mask) -> int:
    return len(mask.coords)


def _hull_array(points) -> np.ndarray:
    return kernels.hull_sorted(_as_points(points))


def convex_hull(points) -> HullPolygon:
    """Monotone-chain hull. Collinear input yields its two extremes."""
    h = _hull_array(points)
    return HullPolygon(tuple(Point(int(x), int(y)) for x, y in h))


def _diameter_of_hull(h: np.ndarray) -> DiameterResult:
    i, j, d2 = kernels.hull_diameter(h)
    a = Point(int(h[i][0]), int(h[i][1]))
    b = Point(int(h[j][0]), int(h[j][1]))
    return DiameterResult(a, b, int(d2))


def farthest_pair(points) -> DiameterResult:
    """Diameter of a point set via rotating calipers on its hull.

    Ties resolve to the lexicographically smallest ``(a, b)`` with ``a < b``.
    """
    return _diameter_of_hull(_hull_array(points))


def boundary_points(mask) -> np.ndarray:
    """Mask pixels with at least one 4-neighbour outside the mask."""
    c = mask.coords
    if not len(c):
        return c
    lo = c.min(axis=0)
    hi = c.max(axis=0)
    grid = np.zeros((hi[1] - lo[1] + 1, hi[0] - lo[0] + 1), dtype=np.uint8)
    grid[c[:, 1] - lo[1], c[:, 0] - lo[0]] = 1
    return kernels.boundary_pixels(grid) + lo


def mask_diameter(mask) -> DiameterResult:
    """Farthest pair of a mask, computed over its boundary pixels only."""
    if not len(mask.coords):
        raise EmptyGeometryError("mask is empty")
    return farthest_pair(boundary_points(mask))
