import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from airtype.errors import EmptyGeometryError
from airtype.geometry import (
    Point,
    boundary_points,
    convex_hull,
    farthest_pair,
    mask_diameter,
    pixel_count,
)
from airtype.maskio import Mask, decode_rle
from oracles import brute_diameter, brute_max_d2, gift_wrap

coords = st.integers(-50, 50)
point_sets = st.lists(st.tuples(coords, coords), min_size=1, max_size=80)


def test_pixel_count_examples():
    assert pixel_count(Mask(3, 3)) == 0
    assert pixel_count(Mask(4, 4, [(x, y) for x in range(4) for y in range(4)])) == 16
    assert pixel_count(decode_rle([1, 2, 1], 2, 2)) == 2


def test_hull_single_point():
    assert convex_hull([(0, 0)]).vertices == (Point(0, 0),)


def test_hull_collinear_keeps_extremes():
    assert convex_hull([(0, 0), (1, 0), (2, 0)]).vertices == ((0, 0), (2, 0))


def test_hull_square_ccw_from_smallest():
    h = convex_hull([(1, 1), (0, 0), (0, 1), (1, 0), (0, 0)])
    assert h.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))


@pytest.mark.parametrize("fn", [convex_hull, farthest_pair])
def test_empty_input_rejected(fn):
    with pytest.raises(EmptyGeometryError):
        fn([])


def test_diameter_single_point():
    d = farthest_pair([(0, 0)])
    assert (d.endpoint_a, d.endpoint_b, d.dist_px) == ((0, 0), (0, 0), 0.0)


def test_diameter_unit_square():
    d = farthest_pair([(0, 0), (0, 1), (1, 0), (1, 1)])
    assert d.dist_px == pytest.approx(math.sqrt(2), abs=1e-8)
    # both diagonals tie; the lexicographically smallest pair wins
    assert (d.endpoint_a, d.endpoint_b) == ((0, 0), (1, 1))


def test_hull_random_box_matches_gift_wrap():
    rng = np.random.default_rng(200)
    pts = rng.integers(0, 512, size=(200, 2))
    assert list(convex_hull(pts).vertices) == gift_wrap(pts.tolist())


@given(point_sets)
def test_hull_vertices_subset_and_strictly_convex(points):
    v = convex_hull(points).vertices
    assert set(v) <= set(points)
    n = len(v)
    if n >= 3:
        for i in range(n):
            (ax, ay), (bx, by), (cx, cy) = v[i], v[(i + 1) % n], v[(i + 2) % n]
            assert (bx - ax) * (cy - ay) - (by - ay) * (cx - ax) > 0
    assert v[0] == min(v)


@given(point_sets)
def test_hull_contains_every_point(points):
    h = convex_hull(points)
    assert all(h.contains(p) for p in points)


@given(point_sets)
def test_hull_idempotent(points):
    h = convex_hull(points)
    assert convex_hull(h.vertices).vertices == h.vertices


@given(point_sets)
def test_diameter_equals_brute_force(points):
    d = farthest_pair(points)
    d2, a, b = brute_diameter(points)
    assert d.dist2 == d2 == (d.endpoint_a[0] - d.endpoint_b[0]) ** 2 + (d.endpoint_a[1] - d.endpoint_b[1]) ** 2
    assert (d.endpoint_a, d.endpoint_b) == (a, b)
    assert d.endpoint_a in convex_hull(points).vertices


@given(point_sets, coords, coords)
def test_diameter_translation_invariant(points, dx, dy):
    moved = [(x + dx, y + dy) for x, y in points]
    assert farthest_pair(moved).dist_px == farthest_pair(points).dist_px


@given(point_sets)
def test_diameter_rotation_90_invariant(points):
    rotated = [(-y, x) for x, y in points]
    assert farthest_pair(rotated).dist2 == farthest_pair(points).dist2


@given(point_sets, st.tuples(coords, coords))
def test_diameter_monotone(points, extra):
    assert farthest_pair(points + [extra]).dist2 >= farthest_pair(points).dist2


@given(st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)), min_size=1, max_size=120))
def test_boundary_hull_gives_same_diameter(points):
    m = Mask(16, 16, points)
    assert mask_diameter(m).dist2 == farthest_pair(m.coords).dist2 == brute_max_d2(points)


def test_boundary_of_filled_block_excludes_interior():
    m = Mask(5, 5, [(x, y) for x in range(5) for y in range(5)])
    b = {tuple(p) for p in boundary_points(m).tolist()}
    assert (2, 2) not in b and (0, 0) in b and len(b) == 16


def test_mask_diameter_empty():
    with pytest.raises(EmptyGeometryError):
        mask_diameter(Mask(2, 2))
