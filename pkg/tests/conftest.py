import numpy as np
import pytest

from ldop import GrayImage, write_pgm


def random_image(rng, h, w, lo=0, hi=256):
    return GrayImage(rng.integers(lo, hi, size=(h, w), dtype=np.int64))


def make_dataset(root, rng, n_classes, per_class, size=64):
    """Synthetic directory-per-class PGM dataset with class-correlated images."""
    for c in range(n_classes):
        cdir = root / f"s{c:03d}"
        cdir.mkdir(parents=True)
        base = rng.integers(0, 200, size=(size, size), dtype=np.int64)
        for i in range(per_class):
            noise = rng.integers(0, 56, size=(size, size), dtype=np.int64)
            img = GrayImage(np.clip(base + noise, 0, 255))
            write_pgm(img, cdir / f"img{i:03d}.pgm")
    return root


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
