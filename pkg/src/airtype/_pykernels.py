"""Pure-Python/numpy implementations of the hot kernels.

Same signatures as the compiled ``_ckernels`` module; :mod:`airtype.kernels`
picks whichever is importable. Integer arithmetic here uses Python ints, so
it is exact for any coordinate magnitude.
"""
import numpy as np


def boundary_pixels(grid):
    """(x, y) of foreground cells with at least one 4-neighbour outside the set.

    Cells outside ``grid`` count as background. Output is row-major.
    """
    g = np.asarray(grid, dtype=bool)
    padded = np.pad(g, 1, constant_values=False)
    interior = (
        padded[:-2, 1:-1] & padded[2:, 1:-1] & padded[1:-1, :-2] & padded[1:-1, 2:]
    )
    ys, xs = np.nonzero(g & ~interior)
    return np.column_stack((xs, ys)).astype(np.int64)


def _cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def hull_sorted(pts):
    """Monotone chain over points already sorted by (x, y) and de-duplicated.

    Returns the strictly convex hull, counter-clockwise, starting at the
    lexicographically smallest point.
    """
    pts = [(int(x), int(y)) for x, y in pts]
    n = len(pts)
    if n <= 2:
        return np.array(pts, dtype=np.int64).reshape(-1, 2)

    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(*lower[-2], *lower[-1], *p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(*upper[-2], *upper[-1], *p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return np.array(hull, dtype=np.int64).reshape(-1, 2)


def hull_diameter(hull):
    """Rotating calipers over a strictly convex CCW hull.

    Returns ``(i, j, d2)``: indices of the farthest pair and its exact squared
    distance. Among equally distant pairs the lexicographically smallest
    ``(a, b)`` with ``a < b`` wins.
    """
    h = [(int(x), int(y)) for x, y in hull]
    m = len(h)
    if m == 1:
        return 0, 0, 0
    if m == 2:
        i, j = (0, 1) if h[0] < h[1] else (1, 0)
        return i, j, (h[0][0] - h[1][0]) ** 2 + (h[0][1] - h[1][1]) ** 2

    best = None

    def consider(p, q):
        nonlocal best
        a, b = h[p], h[q]
        d2 = (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2
        if b < a:
            p, q, a, b = q, p, b, a
        key = (-d2, a, b)
        if best is None or key < best[0]:
            best = (key, p, q, d2)

    j = 1
    for i in range(m):
        i1 = (i + 1) % m
        ax, ay = h[i]
        bx, by = h[i1]
        while True:
            jn = (j + 1) % m
            if _cross(ax, ay, bx, by, *h[jn]) > _cross(ax, ay, bx, by, *h[j]):
                j = jn
            else:
                break
        consider(i, j)
        consider(i1, j)
        jn = (j + 1) % m
        if _cross(ax, ay, bx, by, *h[jn]) == _cross(ax, ay, bx, by, *h[j]):
            consider(i, jn)
            consider(i1, jn)
    _, p, q, d2 = best
    return p, q, d2


def rle_decode(counts, width, height):
    counts = np.asarray(counts, dtype=np.int64)
    flat = np.zeros(width * height, dtype=np.uint8)
    if counts.size:
        ends = np.cumsum(counts)
        starts = ends - counts
        for s, e in zip(starts[1::2], ends[1::2]):
            flat[s:e] = 1
    return flat.reshape(height, width)


def rle_encode(grid):
    flat = np.asarray(grid, dtype=bool).ravel()
    if flat.size == 0:
        return np.zeros(1, dtype=np.int64)
    change = np.flatnonzero(flat[1:] != flat[:-1]) + 1
    bounds = np.concatenate(([0], change, [flat.size]))
    runs = np.diff(bounds)
    if flat[0]:
        runs = np.concatenate(([0], runs))
    return runs.astype(np.int64)


def fill_polygon(xs, ys, width, height):
    """Even-odd fill: cell (x, y) is set when its centre (x+.5, y+.5) is inside.

    A centre lying exactly on a left/top edge is inside, on a right/bottom
    edge outside (half-open crossing rule).
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    out = np.zeros((height, width), dtype=np.uint8)
    n = len(xs)
    if n < 3:
        return out
    x0, y0 = xs, ys
    x1, y1 = np.roll(xs, -1), np.roll(ys, -1)
    for row in range(height):
        cy = row + 0.5
        hit = (y0 <= cy) != (y1 <= cy)
        if not hit.any():
            continue
        t = (cy - y0[hit]) / (y1[hit] - y0[hit])
        xc = np.sort(x0[hit] + t * (x1[hit] - x0[hit]))
        for left, right in zip(xc[0::2], xc[1::2]):
            # centres c = col + .5 with left <= c < right
            c0 = max(int(np.ceil(left - 0.5)), 0)
            c1 = min(int(np.ceil(right - 0.5)), width)
            if c1 > c0:
                out[row, c0:c1] = 1
    return out
