"""Grayscale image container, PGM/PNG loading, and bilinear resizing."""

import os
from dataclasses import dataclass, field

import numpy as np


class UnsupportedFormatError(ValueError):
    """Raised for image files in a format the loader does not handle."""


@dataclass(frozen=True)
class GrayImage:
    """An immutable 2-D grid of intensities with a declared bit depth.

    ``pixels`` is row-major with shape (height, width); every value lies in
    [0, 2**bit_depth - 1].
    """

    pixels: np.ndarray
    bit_depth: int = 8

    def __post_init__(self):
        p = np.asarray(self.pixels)
        if p.ndim != 2 or p.size == 0:
            raise ValueError("pixels must be a non-empty 2-D array")
        if not np.issubdtype(p.dtype, np.integer):
            p = np.asarray(np.rint(p), dtype=np.int64)
        if self.bit_depth < 1 or self.bit_depth > 16:
            raise ValueError(f"unsupported bit depth {self.bit_depth}")
        if p.min() < 0 or p.max() > self.max_value:
            raise ValueError("pixel values outside [0, 2**B - 1]")
        p = np.ascontiguousarray(p, dtype=np.uint8 if self.bit_depth <= 8 else np.uint16)
        p.setflags(write=False)
        object.__setattr__(self, "pixels", p)

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def max_value(self):
        return (1 << self.bit_depth) - 1

    def as_float(self):
        return self.pixels.astype(np.float64)

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.bit_depth == other.bit_depth and np.array_equal(self.pixels, other.pixels)


def _round_half_up(x):
    return np.floor(x + 0.5)


def to_gray(r, g, b):
    """BT.601 luma: round(0.299 r + 0.587 g + 0.114 b), clamped to [0, 255].

    Accepts scalars or arrays; r == g == b == v maps to v exactly for all v.
    """
    r = np.asarray(r, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    # integer numerator keeps gray inputs exact: (299 + 587 + 114) v = 1000 v
    num = 299 * r + 587 * g + 114 * b
    out = np.clip(_round_half_up(num / 1000.0), 0, 255).astype(np.int64)
    if out.ndim == 0:
        return int(out)
    return out


def _read_pgm(path):
    with open(path, "rb") as f:
        data = f.read()

    pos = 0

    def token():
        nonlocal pos
        while pos < len(data):
            c = data[pos:pos + 1]
            if c == b"#":
                while pos < len(data) and data[pos:pos + 1] != b"\n":
                    pos += 1
            elif c.isspace():
                pos += 1
            else:
                break
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise UnsupportedFormatError(f"{path}: truncated PGM header")
        return data[start:pos]

    magic = token()
    if magic != b"P5":
        raise UnsupportedFormatError(f"{path}: not a binary (P5) PGM file")
    width = int(token())
    height = int(token())
    maxval = int(token())
    if width < 1 or height < 1 or not (0 < maxval < 65536):
        raise UnsupportedFormatError(f"{path}: bad PGM dimensions/maxval")
    pos += 1  # single whitespace byte after maxval
    depth = maxval.bit_length()
    nbytes = width * height * (1 if maxval < 256 else 2)
    raster = data[pos:pos + nbytes]
    if len(raster) != nbytes:
        raise UnsupportedFormatError(f"{path}: truncated PGM raster")
    dtype = np.uint8 if maxval < 256 else np.dtype(">u2")
    pixels = np.frombuffer(raster, dtype=dtype).reshape(height, width)
    return GrayImage(pixels.astype(np.int64), bit_depth=depth)


def _read_png(path):
    from PIL import Image

    with Image.open(path) as im:
        if im.mode in ("P", "RGBA", "LA"):
            im = im.convert("RGB" if im.mode in ("P", "RGBA") else "L")
        if im.mode == "L":
            return GrayImage(np.asarray(im, dtype=np.int64), bit_depth=8)
        if im.mode == "RGB":
            arr = np.asarray(im, dtype=np.int64)
            return GrayImage(to_gray(arr[..., 0], arr[..., 1], arr[..., 2]), bit_depth=8)
        raise UnsupportedFormatError(f"{path}: unsupported PNG mode {im.mode}")


def load_gray(path):
    """Load a PGM (binary P5) or PNG image as a GrayImage.

    Color PNG inputs are converted through :func:`to_gray`.
    """
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    ext = os.path.splitext(str(path))[1].lower()
    if ext == ".pgm":
        return _read_pgm(path)
    if ext == ".png":
        return _read_png(path)
    raise UnsupportedFormatError(f"{path}: unsupported image format {ext!r}")


def write_pgm(img, path):
    """Write a GrayImage as binary (P5) PGM; round-trips bit-exactly."""
    maxval = img.max_value
    header = f"P5\n{img.width} {img.height}\n{maxval}\n".encode("ascii")
    if maxval < 256:
        raster = img.pixels.astype(np.uint8).tobytes()
    else:
        raster = img.pixels.astype(">u2").tobytes()
    with open(path, "wb") as f:
        f.write(header)
        f.write(raster)


def resize_bilinear(img, out_w, out_h):
    """Resize with bilinear interpolation using half-pixel-center coordinates.

    Resizing to the input size is the identity; output values never leave
    [min(input), max(input)].
    """
    if out_w < 1 or out_h < 1:
        raise ValueError("output dimensions must be >= 1")
    src = img.as_float()
    h, w = src.shape
    if (out_h, out_w) == (h, w):
        return img

    ys = np.clip((np.arange(out_h) + 0.5) * (h / out_h) - 0.5, 0.0, h - 1.0)
    xs = np.clip((np.arange(out_w) + 0.5) * (w / out_w) - 0.5, 0.0, w - 1.0)
    y0 = np.floor(ys).astype(np.int64)
    x0 = np.floor(xs).astype(np.int64)
    ty = ys - y0
    tx = xs - x0
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)

    top = src[y0][:, x0] * (1 - tx) + src[y0][:, x1] * tx
    bot = src[y1][:, x0] * (1 - tx) + src[y1][:, x1] * tx
    out = top * (1 - ty)[:, None] + bot * ty[:, None]
    out = np.clip(_round_half_up(out), 0, img.max_value).astype(np.int64)
    return GrayImage(out, bit_depth=img.bit_depth)
