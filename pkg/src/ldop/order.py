"""Intensity orders along a direction and their lexicographic permutation rank.

The rank of a permutation of {1..R} among all R! permutations is computed
through its Lehmer code in O(R^2); no permutation table is ever materialized.
"""

from dataclasses import dataclass
from math import factorial

import numpy as np

from .sampling import MAX_RADIUS, directional_sample_grid


def order_vector(values):
    """Rank of each entry within the sorted vector, 1-based.

    Ties are broken by position: the earlier entry (smaller radius) receives
    the smaller rank, so the result is always a permutation of {1..R}.
    """
    p = np.asarray(values, dtype=np.float64)
    if p.ndim != 1 or p.size < 1:
        raise ValueError("expected a non-empty 1-D vector")
    idx = np.argsort(p, kind="stable")
    out = np.empty(p.size, dtype=np.int64)
    out[idx] = np.arange(1, p.size + 1)
    return out


def _check_permutation(perm):
    o = np.asarray(perm, dtype=np.int64)
    n = o.size
    if n < 1 or n > MAX_RADIUS:
        raise ValueError(f"permutation length must be in [1, {MAX_RADIUS}]")
    if not np.array_equal(np.sort(o), np.arange(1, n + 1)):
        raise ValueError(f"{list(perm)} is not a permutation of 1..{n}")
    return o


def perm_rank(perm):
    """1-based lexicographic rank of a permutation of {1..R} via Lehmer code."""
    o = _check_permutation(perm)
    n = o.size
    rank = 0
    for i in range(n):
        smaller_after = int(np.count_nonzero(o[i + 1:] < o[i]))
        rank += smaller_after * factorial(n - 1 - i)
    return rank + 1


def perm_unrank(j, n):
    """Inverse of :func:`perm_rank`: the j-th permutation of {1..n}, 1-based."""
    if n < 1 or n > MAX_RADIUS:
        raise ValueError(f"length must be in [1, {MAX_RADIUS}]")
    if not (1 <= j <= factorial(n)):
        raise ValueError(f"rank {j} outside [1, {n}!]")
    rest = list(range(1, n + 1))
    r = j - 1
    out = []
    for i in range(n):
        f = factorial(n - 1 - i)
        digit, r = divmod(r, f)
        out.append(rest.pop(digit))
    return np.asarray(out, dtype=np.int64)


@dataclass(frozen=True)
class OrderIndexMap:
    """Per-pixel permutation index for one direction over the interior grid."""

    direction: int
    radius: int
    values: np.ndarray  # (d_x - 2R, d_y - 2R), each in [1, R!]


def order_rank_grid(pix, k, spec):
    """Permutation index of the radius-ordering at every interior pixel.

    ``pix`` is the float64 image array; returns an int64 grid of values in
    [1, R!] over pixels at least R from every border.
    """
    r_max = spec.radius
    grids = [
        directional_sample_grid(pix, k, r, spec.directions, r_max)
        for r in range(1, r_max + 1)
    ]
    # Lehmer digit i counts later positions with a strictly smaller value;
    # ties go to the smaller radius, which strict < already encodes.
    rank = np.zeros(grids[0].shape, dtype=np.int64)
    for i in range(r_max):
        smaller_after = np.zeros_like(rank)
        for j in range(i + 1, r_max):
            smaller_after += grids[j] < grids[i]
        rank += smaller_after * factorial(r_max - 1 - i)
    return rank + 1


def order_map(img, k, spec):
    """The direction-k order index map over the interior of ``img``."""
    h, w = img.pixels.shape
    r_max = spec.radius
    if h <= 2 * r_max or w <= 2 * r_max:
        raise ValueError(f"image {h}x{w} too small for radius {r_max}")
    spec.angle(k)  # validates k
    grid = order_rank_grid(img.as_float(), k, spec)
    return OrderIndexMap(direction=k, radius=r_max, values=grid)
