"""Pairwise distance measures for variable-length series.

Five measures, all tolerant of unequal lengths:

* ``dist_ed_truncate`` — Euclidean distance after truncating the longer
  series,
* ``dist_dtw_full``   — unconstrained dynamic time warping with squared
  point cost (returned without a final square root: only the argmin matters
  for 1-NN),
* ``dist_ssd``        — minimum Euclidean distance of the z-normalized
  shorter series against every z-normalized sliding window of the longer,
* ``dist_us``         — minimum Euclidean distance over uniform stretchings
  of the shorter series matched against prefixes of the longer,
* ``dist_sbd``        — one minus the maximum normalized cross-correlation
  over all integer shifts (range [0, 2]).

All functions accept ``TimeSeries`` or plain 1-D arrays.
"""

from __future__ import annotations

import enum

import numpy as np
from numba import njit
from numpy.lib.stride_tricks import sliding_window_view

from .series import DEGENERATE_STD, as_values

__all__ = [
    "DistanceMeasure",
    "dist_ed_truncate",
    "dist_dtw_full",
    "dtw_cost_matrix",
    "dist_ssd",
    "dist_us",
    "dist_sbd",
    "distance",
    "DISTANCE_FUNCS",
]


class DistanceMeasure(str, enum.Enum):
    EUCLIDEAN_TRUNCATE = "ed"
    DTW_FULL = "dtw"
    SUBSEQUENCE_SLIDING = "ssd"
    UNIFORM_SCALING_DIST = "us"
    SHAPE_BASED = "sbd"


def dist_ed_truncate(a, b) -> float:
    """Euclidean distance over the first min(len a, len b) points."""
    a, b = as_values(a), as_values(b)
    m = min(a.shape[0], b.shape[0])
    d = a[:m] - b[:m]
    return float(np.sqrt(d @ d))


@njit(cache=True)
def _dtw_accumulate(long, short):
    """Rolling two-row DTW on squared cost; ``short`` is the inner axis."""
    n = long.shape[0]
    m = short.shape[0]
    prev = np.empty(m, dtype=np.float64)
    curr = np.empty(m, dtype=np.float64)
    acc = 0.0
    for j in range(m):
        d = long[0] - short[j]
        acc += d * d
        prev[j] = acc
    for i in range(1, n):
        d = long[i] - short[0]
        curr[0] = prev[0] + d * d
        for j in range(1, m):
            best = prev[j]
            if prev[j - 1] < best:
                best = prev[j - 1]
            if curr[j - 1] < best:
                best = curr[j - 1]
            d = long[i] - short[j]
            curr[j] = best + d * d
        prev, curr = curr, prev
    return prev[m - 1]


def dist_dtw_full(a, b) -> float:
    """Unconstrained DTW, accumulated squared cost (no final sqrt)."""
    a, b = as_values(a), as_values(b)
    if a.shape[0] >= b.shape[0]:
        return float(_dtw_accumulate(a, b))
    return float(_dtw_accumulate(b, a))


def dtw_cost_matrix(a, b) -> np.ndarray:
    """Full accumulated-cost matrix; debugging aid for the rolling kernel."""
    a, b = as_values(a), as_values(b)
    n, m = a.shape[0], b.shape[0]
    local = (a[:, None] - b[None, :]) ** 2
    acc = np.empty((n, m))
    acc[0, :] = np.cumsum(local[0, :])
    acc[:, 0] = np.cumsum(local[:, 0])
    for i in range(1, n):
        for j in range(1, m):
            acc[i, j] = local[i, j] + min(acc[i - 1, j], acc[i, j - 1], acc[i - 1, j - 1])
    return acc


def _znorm_rows(w: np.ndarray) -> np.ndarray:
    std = w.std(axis=1, keepdims=True)
    centered = w - w.mean(axis=1, keepdims=True)
    degenerate = std < DEGENERATE_STD
    return np.where(degenerate, 0.0, centered / np.where(degenerate, 1.0, std))


def dist_ssd(a, b) -> float:
    """Best z-normalized Euclidean match of the shorter inside the longer."""
    a, b = as_values(a), as_values(b)
    if a.shape[0] <= b.shape[0]:
        query, longer = a, b
    else:
        query, longer = b, a
    q = _znorm_rows(query[None, :])[0]
    windows = _znorm_rows(sliding_window_view(longer, query.shape[0]))
    dists = np.sqrt(((windows - q) ** 2).sum(axis=1))
    return float(dists.min())


def dist_us(a, b) -> float:
    """Best Euclidean match over uniform stretchings of the shorter series.

    Each candidate length p in [len short, len long] stretches the shorter
    series to p points and compares it with the length-p prefix of the
    longer one.
    """
    a, b = as_values(a), as_values(b)
    if a.shape[0] <= b.shape[0]:
        short, long_ = a, b
    else:
        short, long_ = b, a
    m, n = short.shape[0], long_.shape[0]
    src = np.arange(m)
    best = np.inf
    for p in range(m, n + 1):
        stretched = np.interp(np.linspace(0.0, m - 1, num=p), src, short)
        d = stretched - long_[:p]
        best = min(best, float(np.sqrt(d @ d)))
    return best


def dist_sbd(a, b) -> float:
    """Shape-based distance: 1 - max normalized cross-correlation.

    Shifts run from -(len b - 1) to len a - 1 with zero fill outside the
    overlap. Returns the neutral value 1 if either series has zero norm.
    """
    a, b = as_values(a), as_values(b)
    norm = np.linalg.norm(a) * np.linalg.norm(b)
    if norm < DEGENERATE_STD:
        return 1.0
    ncc = np.correlate(a, b, mode="full") / norm
    return float(1.0 - ncc.max())


DISTANCE_FUNCS = {
    DistanceMeasure.EUCLIDEAN_TRUNCATE: dist_ed_truncate,
    DistanceMeasure.DTW_FULL: dist_dtw_full,
    DistanceMeasure.SUBSEQUENCE_SLIDING: dist_ssd,
    DistanceMeasure.UNIFORM_SCALING_DIST: dist_us,
    DistanceMeasure.SHAPE_BASED: dist_sbd,
}


def distance(measure: DistanceMeasure, a, b) -> float:
    return DISTANCE_FUNCS[measure](a, b)
