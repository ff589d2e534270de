"""Compiled symmetric pairwise-distance kernels for the elementwise measures.

Only the upper triangle is computed; each cell is an independent sum, so the
result is deterministic regardless of threading.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def chisq_sym(x):
    n, m = x.shape
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for c in range(m):
                s = x[i, c] + x[j, c]
                if s != 0.0:
                    d = x[i, c] - x[j, c]
                    acc += d * d / s
            v = 0.5 * acc
            out[i, j] = v
            out[j, i] = v
    return out


@njit(cache=True)
def l1_sym(x):
    n, m = x.shape
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for c in range(m):
                acc += abs(x[i, c] - x[j, c])
            out[i, j] = acc
            out[j, i] = acc
    return out


@njit(cache=True)
def d1_sym(x):
    n, m = x.shape
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for c in range(m):
                acc += abs(x[i, c] - x[j, c]) / (1.0 + x[i, c] + x[j, c])
            out[i, j] = acc
            out[j, i] = acc
    return out
