"""Directional-order pattern codes, histograms, and the LBP baseline."""

from dataclasses import dataclass
from math import factorial

import numpy as np

from .order import order_rank_grid, order_vector, perm_rank
from .sampling import NeighborSpec, directional_neighbors, directional_sample_grid

KIND_LDOP = "ldop"
KIND_LBP = "lbp"


def center_transform(value, radius, bit_depth=8):
    """Rescale an intensity from [0, 2^B - 1] into [1, R!], kept fractional."""
    if not (2 <= radius <= 12):
        raise ValueError("radius must be in [2, 12]")
    return value * (factorial(radius) - 1) / ((1 << bit_depth) - 1) + 1.0


@dataclass(frozen=True)
class PatternMap:
    """Per-pixel codes over the interior grid, each in [0, 2^N - 1]."""

    radius: int
    codes: np.ndarray  # (d_x - 2R, d_y - 2R)


@dataclass(frozen=True)
class Descriptor:
    """A normalized histogram vector, possibly several concatenated segments.

    ``layout`` lists (kind, radius) per segment; every segment has 2**directions
    bins and sums to 1.
    """

    values: np.ndarray
    layout: tuple  # ((kind, radius), ...)
    directions: int = 8

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        if v.ndim != 1 or len(self.layout) == 0:
            raise ValueError("descriptor needs a 1-D vector and >= 1 segment")
        if v.size != len(self.layout) * self.segment_length:
            raise ValueError("value length does not match layout")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "layout", tuple(tuple(s) for s in self.layout))

    @property
    def segment_length(self):
        return 1 << self.directions

    def __eq__(self, other):
        if not isinstance(other, Descriptor):
            return NotImplemented
        return (
            self.layout == other.layout
            and self.directions == other.directions
            and np.array_equal(self.values, other.values)
        )


def concat_descriptors(parts):
    """Concatenate descriptor segments in the given order."""
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to concatenate")
    n = parts[0].directions
    if any(p.directions != n for p in parts):
        raise ValueError("mixed direction counts")
    layout = tuple(seg for p in parts for seg in p.layout)
    return Descriptor(np.concatenate([p.values for p in parts]), layout, n)


def ldop_code(img, x, y, spec):
    """The directional-order code at 1-based interior pixel (x, y).

    Bit k-1 is set when the direction-k order index is >= the transformed
    center value.
    """
    t = center_transform(float(img.pixels[x - 1, y - 1]), spec.radius, img.bit_depth)
    code = 0
    for k in range(1, spec.directions + 1):
        omega = perm_rank(order_vector(directional_neighbors(img, x, y, k, spec)))
        if omega >= t:
            code += 1 << (k - 1)
    return code


def _check_interior(img, radius):
    h, w = img.pixels.shape
    if h <= 2 * radius or w <= 2 * radius:
        raise ValueError(f"image {h}x{w} too small for radius {radius}")


def ldop_map(img, spec):
    """Apply :func:`ldop_code` to every interior pixel, vectorized."""
    r = spec.radius
    _check_interior(img, r)
    pix = img.as_float()
    t = center_transform(pix[r:-r, r:-r], r, img.bit_depth)
    codes = np.zeros(t.shape, dtype=np.int64)
    for k in range(1, spec.directions + 1):
        codes += (order_rank_grid(pix, k, spec) >= t).astype(np.int64) << (k - 1)
    return PatternMap(radius=r, codes=codes)


def _histogram(codes, directions):
    bins = 1 << directions
    counts = np.bincount(codes.ravel(), minlength=bins).astype(np.float64)
    return counts / codes.size


def ldop_histogram(img, spec):
    """Normalized 2^N-bin histogram of the code map; a single-segment descriptor."""
    pm = ldop_map(img, spec)
    return Descriptor(
        _histogram(pm.codes, spec.directions),
        ((KIND_LDOP, spec.radius),),
        spec.directions,
    )


def multi_res_ldop(img, r_min, r_max, directions=8):
    """Concatenation of single-radius histograms for R = r_min..r_max."""
    if not (2 <= r_min <= r_max <= 12):
        raise ValueError("need 2 <= r_min <= r_max <= 12")
    return concat_descriptors(
        ldop_histogram(img, NeighborSpec(radius=r, directions=directions))
        for r in range(r_min, r_max + 1)
    )


def lbp_map(img, radius=1, directions=8):
    """Classic LBP codes: bit k-1 set when the radius-R neighbor >= center."""
    _check_interior(img, radius)
    pix = img.as_float()
    center = pix[radius:-radius, radius:-radius]
    codes = np.zeros(center.shape, dtype=np.int64)
    for k in range(1, directions + 1):
        nb = directional_sample_grid(pix, k, radius, directions, radius)
        codes += (nb >= center).astype(np.int64) << (k - 1)
    return PatternMap(radius=radius, codes=codes)


def lbp_histogram(img, radius=1, directions=8):
    """Normalized histogram of the LBP baseline over the same interior."""
    pm = lbp_map(img, radius, directions)
    return Descriptor(_histogram(pm.codes, directions), ((KIND_LBP, radius),), directions)
