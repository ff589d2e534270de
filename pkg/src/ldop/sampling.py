"""Circular neighbor geometry and subpixel intensity sampling.

Coordinates follow the (row, column) convention with x indexing rows
downward and y indexing columns rightward, 1-based.  Direction k = 1 points
right (0 degrees) and angles grow counter-clockwise, so k = 3 points up for
N = 8.
"""

import math
from dataclasses import dataclass

import numpy as np

MAX_RADIUS = 12  # R! must stay comfortably inside 32 bits


@dataclass(frozen=True)
class NeighborSpec:
    """Geometry of the circular neighborhood: N directions, radii 1..R."""

    radius: int = 2
    directions: int = 8

    def __post_init__(self):
        if self.directions < 2:
            raise ValueError("need at least 2 directions")
        if not (1 <= self.radius <= MAX_RADIUS):
            raise ValueError(f"radius must be in [1, {MAX_RADIUS}]")

    def angle(self, k):
        if not (1 <= k <= self.directions):
            raise ValueError(f"direction {k} outside [1, {self.directions}]")
        return (k - 1) * 2.0 * math.pi / self.directions


def _snap(v, eps=1e-9):
    n = round(v)
    return float(n) if abs(v - n) < eps else v


def direction_offsets(k, r, n_directions):
    """Displacement (dx, dy) of the k-th neighbor at radius r.

    Offsets within 1e-9 of an integer are snapped so axis-aligned directions
    land on exact grid points.
    """
    theta = (k - 1) * 2.0 * math.pi / n_directions
    return _snap(-r * math.sin(theta)), _snap(r * math.cos(theta))


def neighbor_coords(x, y, k, r, n_directions):
    """Fractional (row, col) of the k-th neighbor at radius r from (x, y)."""
    dx, dy = direction_offsets(k, r, n_directions)
    return x + dx, y + dy


def sample_bilinear(img, fx, fy):
    """Bilinear sample at the 1-based fractional coordinate (fx, fy).

    Exact grid points return the stored value with no interpolation error.
    """
    h, w = img.pixels.shape
    if not (1.0 <= fx <= h and 1.0 <= fy <= w):
        raise ValueError(f"sample point ({fx}, {fy}) outside image {h}x{w}")
    u = fx - 1.0
    v = fy - 1.0
    x0 = int(math.floor(u))
    y0 = int(math.floor(v))
    tx = u - x0
    ty = v - y0
    p = img.pixels

    def row_mix(xi):
        a = float(p[xi, y0])
        if ty == 0.0:
            return a
        return (1.0 - ty) * a + ty * float(p[xi, y0 + 1])

    top = row_mix(x0)
    if tx == 0.0:
        return top
    return (1.0 - tx) * top + tx * row_mix(x0 + 1)


def _sample_offset(p, x0, y0, dx, dy):
    """Bilinear sample at integer (x0, y0) displaced by (dx, dy), 0-based.

    Weights come from the offsets themselves so this matches
    :func:`directional_sample_grid` bit for bit.
    """
    fx0 = int(math.floor(dx))
    fy0 = int(math.floor(dy))
    tx = dx - fx0
    ty = dy - fy0
    xa = x0 + fx0
    ya = y0 + fy0

    def row_mix(xi):
        a = float(p[xi, ya])
        if ty == 0.0:
            return a
        return (1.0 - ty) * a + ty * float(p[xi, ya + 1])

    top = row_mix(xa)
    if tx == 0.0:
        return top
    return (1.0 - tx) * top + tx * row_mix(xa + 1)


def directional_neighbors(img, x, y, k, spec):
    """Vector of the R intensities at radii 1..R along direction k from (x, y).

    (x, y) must lie at least R pixels from every border.
    """
    h, w = img.pixels.shape
    r_max = spec.radius
    if not (r_max + 1 <= x <= h - r_max and r_max + 1 <= y <= w - r_max):
        raise ValueError(f"pixel ({x}, {y}) within {r_max} of the border")
    spec.angle(k)  # validates k
    out = np.empty(r_max, dtype=np.float64)
    for r in range(1, r_max + 1):
        dx, dy = direction_offsets(k, r, spec.directions)
        out[r - 1] = _sample_offset(img.pixels, x - 1, y - 1, dx, dy)
    return out


def directional_sample_grid(pix, k, r, n_directions, margin):
    """Sample neighbor (k, r) for every pixel at least ``margin`` from the border.

    ``pix`` is a float64 (H, W) array with margin >= r; returns an
    (H - 2*margin, W - 2*margin) float64 array matching
    :func:`sample_bilinear` bit for bit.
    """
    dx, dy = direction_offsets(k, r, n_directions)
    h, w = pix.shape
    oh = h - 2 * margin
    ow = w - 2 * margin
    fx0 = int(math.floor(dx))
    fy0 = int(math.floor(dy))
    tx = dx - fx0
    ty = dy - fy0

    def block(xi, yi):
        x = margin + xi
        y = margin + yi
        return pix[x:x + oh, y:y + ow]

    def row_mix(xi):
        a = block(xi, fy0)
        if ty == 0.0:
            return a
        return (1.0 - ty) * a + ty * block(xi, fy0 + 1)

    top = row_mix(fx0)
    if tx == 0.0:
        return np.array(top, dtype=np.float64)
    return (1.0 - tx) * top + tx * row_mix(fx0 + 1)
