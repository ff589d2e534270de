"""Render order-index and code maps of a test image as PGM files.

Builds a synthetic image with visible structure (a diagonal grating plus a
bright disc), computes the per-direction order-index maps and the LDOP and
LBP code maps, rescales each to 0..255, and writes everything under
demos/out/.  Run with `python3 demos/pattern_maps_to_pgm.py`.
"""

import os

import numpy as np

from ldop import GrayImage, NeighborSpec, lbp_map, ldop_map, order_map, write_pgm

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)


def scale_to_u8(values):
    lo, hi = values.min(), values.max()
    span = hi - lo if hi > lo else 1
    return ((values - lo) * 255) // span


yy, xx = np.meshgrid(np.arange(96), np.arange(96), indexing="ij")
grating = 96.0 + 80.0 * np.sin((xx + yy) / 4.0)
disc = np.where((xx - 64) ** 2 + (yy - 32) ** 2 < 18 ** 2, 60.0, 0.0)
img = GrayImage(np.clip(np.round(grating + disc), 0, 255).astype(np.int64))
write_pgm(img, os.path.join(OUT, "input.pgm"))

spec = NeighborSpec(radius=3, directions=8)
for k in (1, 3, 5):
    om = order_map(img, k, spec)
    write_pgm(
        GrayImage(scale_to_u8(om.values)),
        os.path.join(OUT, f"order_map_k{k}.pgm"),
    )
    print(f"direction {k}: order indexes span [{om.values.min()}, {om.values.max()}]")

pm = ldop_map(img, spec)
write_pgm(GrayImage(scale_to_u8(pm.codes)), os.path.join(OUT, "ldop_map.pgm"))
print(f"ldop map: {pm.codes.shape[0]}x{pm.codes.shape[1]} codes, "
      f"{np.unique(pm.codes).size} distinct of 256 possible")

bm = lbp_map(img)
write_pgm(GrayImage(scale_to_u8(bm.codes)), os.path.join(OUT, "lbp_map.pgm"))
print(f"lbp map:  {bm.codes.shape[0]}x{bm.codes.shape[1]} codes, "
      f"{np.unique(bm.codes).size} distinct of 256 possible")
print(f"wrote PGM files to {OUT}")
