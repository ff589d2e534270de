"""Step-by-step construction of one directional-order code.

Walks a single interior pixel through the whole pipeline: directional
neighbor sampling, intensity ordering, permutation rank, center transform,
and finally the packed binary code.  Run with `python3 demos/code_walkthrough.py`.
"""

import numpy as np

from ldop import (
    GrayImage,
    NeighborSpec,
    center_transform,
    directional_neighbors,
    ldop_code,
    order_vector,
    perm_rank,
)

rng = np.random.default_rng(7)
img = GrayImage(rng.integers(0, 256, size=(9, 9), dtype=np.int64))
spec = NeighborSpec(radius=3, directions=8)
x, y = 5, 5  # 1-based center, 3 pixels from every border

print("image patch around the center:")
print(img.pixels[1:8, 1:8])
print()

t = center_transform(float(img.pixels[x - 1, y - 1]), spec.radius)
print(f"center intensity {img.pixels[x - 1, y - 1]} maps to T = {t:.4f} in [1, 3!]")
print()

code = 0
for k in range(1, spec.directions + 1):
    values = directional_neighbors(img, x, y, k, spec)
    order = order_vector(values)
    omega = perm_rank(order)
    bit = int(omega >= t)
    code += bit << (k - 1)
    print(
        f"direction {k}: neighbors {np.round(values, 2)}"
        f"  order {order.tolist()}  rank {omega}  bit {bit}"
    )

print()
print(f"assembled code: {code} (binary {code:08b})")
assert code == ldop_code(img, x, y, spec)
print("matches ldop_code on the same pixel")
