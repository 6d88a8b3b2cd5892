"""Kernel dispatch: the compiled extension when built, pure Python otherwise."""
import numpy as np

from airtype import _pykernels

try:
    from airtype import _ckernels as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    _impl = _pykernels
    BACKEND = "python"

# 64-bit cross products stay exact while |coord| < 2**30.
_C_COORD_LIMIT = 1 << 30


def _fits_c(arr):
    return arr.size == 0 or int(np.abs(arr).max()) < _C_COORD_LIMIT


def boundary_pixels(grid):
    return _impl.boundary_pixels(grid)


def hull_sorted(pts):
    if _impl is not _pykernels and _fits_c(pts):
        return _impl.hull_sorted(pts)
    return _pykernels.hull_sorted(pts)


def hull_diameter(hull):
    if _impl is not _pykernels and _fits_c(hull):
        return _impl.hull_diameter(hull)
    return _pykernels.hull_diameter(hull)


def rle_decode(counts, width, height):
    return _impl.rle_decode(counts, width, height)


def rle_encode(grid):
    return _impl.rle_encode(grid)


def fill_polygon(xs, ys, width, height):
    return _impl.fill_polygon(xs, ys, width, height)
