"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from airtype import _pykernels
from airtype.synth import SilhouetteSpec, placed_outline
from airtype.photogrammetry import GroundResolution, ResizeScale

try:
    from airtype import _ckernels
except ImportError:
    _ckernels = None


def workloads(rng):
    pts = np.unique(rng.integers(0, 4096, size=(20_000, 2)), axis=0)
    spec = SilhouetteSpec("A-380", 73.0, rotation_deg=23.0)
    poly = placed_outline(spec, GroundResolution(10), ResizeScale(), (400, 400))
    grid = _pykernels.fill_polygon(poly[:, 0], poly[:, 1], 800, 800)
    hull = _pykernels.hull_sorted(pts)
    counts = _pykernels.rle_encode(grid)
    return {
        "hull_sorted (20k pts)": lambda k: k.hull_sorted(pts),
        "hull_diameter": lambda k: k.hull_diameter(hull),
        "boundary_pixels (800x800)": lambda k: k.boundary_pixels(grid),
        "rle_encode (800x800)": lambda k: k.rle_encode(grid),
        "rle_decode (800x800)": lambda k: k.rle_decode(counts, 800, 800),
        "fill_polygon (800x800)": lambda k: k.fill_polygon(poly[:, 0], poly[:, 1], 800, 800),
    }


def best_of(fn, repeat):
    n, _ = timeit.Timer(fn).autorange()
    return min(timeit.Timer(fn).repeat(repeat, n)) / n


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'kernel':28}" + "".join(f"{name:>14}" for name, _ in backends) + ("   speedup" if _ckernels else ""))
    for label, call in workloads(np.random.default_rng(0)).items():
        times = [best_of(lambda: call(k), args.repeat) for _, k in backends]
        row = f"{label:28}" + "".join(f"{t * 1e3:>11.3f} ms" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
