"""The five histogram distance measures used for descriptor matching."""

from enum import Enum

import numpy as np


class DistanceMeasure(str, Enum):
    EUCLIDEAN = "euclidean"
    COSINE = "cosine"
    L1 = "l1"
    D1 = "d1"
    CHI_SQUARE = "chisq"


def _check_pair(a, b):
    if a.layout != b.layout or a.directions != b.directions:
        raise ValueError("descriptor layouts differ")


def distance(a, b, measure):
    """Distance between two descriptors with identical layouts.

    Euclidean, Cosine (1 - cosine similarity, zero vectors at distance 1),
    L1, D1 = sum |a-b| / (1 + a + b), and the symmetric half-weighted
    chi-square with 0/0 terms counted as 0.
    """
    _check_pair(a, b)
    return vector_distance(a.values, b.values, measure)


def vector_distance(x, y, measure):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    measure = DistanceMeasure(measure)
    if measure is DistanceMeasure.EUCLIDEAN:
        d = x - y
        return float(np.sqrt(np.dot(d, d)))
    if measure is DistanceMeasure.L1:
        return float(np.sum(np.abs(x - y)))
    if measure is DistanceMeasure.COSINE:
        nx = np.sqrt(np.dot(x, x))
        ny = np.sqrt(np.dot(y, y))
        if nx == 0.0 or ny == 0.0:
            return 1.0
        # 1 - cos(x, y) written as half the squared normalized difference,
        # which is exactly 0 for identical inputs
        d = x / nx - y / ny
        return float(0.5 * np.dot(d, d))
    if measure is DistanceMeasure.D1:
        return float(np.sum(np.abs(x - y) / (1.0 + x + y)))
    # chi-square
    d = x - y
    s = x + y
    terms = np.divide(d * d, s, out=np.zeros_like(d), where=s != 0)
    return float(0.5 * np.sum(terms))


def cross_distances(matrix, q, measure):
    """Distances from one query vector to every row of ``matrix``, vectorized."""
    x = np.asarray(matrix, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    measure = DistanceMeasure(measure)
    if measure is DistanceMeasure.EUCLIDEAN:
        d = x - q
        return np.sqrt(np.einsum("ij,ij->i", d, d))
    if measure is DistanceMeasure.L1:
        return np.sum(np.abs(x - q), axis=1)
    if measure is DistanceMeasure.COSINE:
        nx = np.sqrt(np.einsum("ij,ij->i", x, x))
        nq = np.sqrt(np.dot(q, q))
        out = np.ones(x.shape[0])
        ok = (nx != 0) & (nq != 0)
        d = x[ok] / nx[ok, None] - q / nq if nq != 0 else None
        if d is not None:
            out[ok] = 0.5 * np.einsum("ij,ij->i", d, d)
        return out
    if measure is DistanceMeasure.D1:
        return np.sum(np.abs(x - q) / (1.0 + x + q), axis=1)
    d = x - q
    s = x + q
    terms = np.divide(d * d, s, out=np.zeros_like(d), where=s != 0)
    return 0.5 * np.sum(terms, axis=1)


def pairwise_distances(matrix, measure):
    """Full symmetric distance matrix over the rows of ``matrix``.

    Elementwise measures (L1, D1, chi-square) run through compiled kernels;
    Euclidean and Cosine go through BLAS.  The diagonal is exactly 0.
    """
    x = np.ascontiguousarray(matrix, dtype=np.float64)
    measure = DistanceMeasure(measure)
    if measure is DistanceMeasure.EUCLIDEAN:
        sq = np.einsum("ij,ij->i", x, x)
        d2 = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
        np.maximum(d2, 0.0, out=d2)
        out = np.sqrt(d2)
        out = np.triu(out, 1)  # BLAS products are not exactly symmetric
        out = out + out.T
    elif measure is DistanceMeasure.COSINE:
        norms = np.sqrt(np.einsum("ij,ij->i", x, x))
        safe = np.where(norms == 0, 1.0, norms)
        sim = (x @ x.T) / safe[:, None] / safe[None, :]
        out = 1.0 - np.clip(sim, -1.0, 1.0)
        zero = norms == 0
        out[zero, :] = 1.0
        out[:, zero] = 1.0
        out = np.triu(out, 1)
        out = out + out.T
    else:
        from . import _kernels

        kernel = {
            DistanceMeasure.L1: _kernels.l1_sym,
            DistanceMeasure.D1: _kernels.d1_sym,
            DistanceMeasure.CHI_SQUARE: _kernels.chisq_sym,
        }[measure]
        out = kernel(x)
    np.fill_diagonal(out, 0.0)
    return out
