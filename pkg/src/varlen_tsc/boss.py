"""Bag-of-SFA-symbols ensemble classifier for equal-length series.

Each ensemble member slides a window over the series, keeps the first few
Fourier coefficients of every window, discretises them into short symbolic
words via per-coefficient equi-depth bins, and counts the words (collapsing
consecutive repeats). Classification is 1-NN between word histograms with an
asymmetric squared-difference distance, majority-voted across the retained
members.

Windows are scaled to unit standard deviation; whether the mean survives is
the per-member ``norm_mean`` switch. With ``norm_mean`` on, the first
(constant) Fourier coefficient is dropped, which is equivalent to full
z-normalization of the window. With it off, the level of the window is kept
as a feature, so classes that differ only by offset remain separable.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .series import DEGENERATE_STD, as_values, training_split

__all__ = [
    "SfaConfig",
    "BossHistogram",
    "BossMember",
    "BossModel",
    "window_dft",
    "fit_mcb_bins",
    "sfa_transform",
    "boss_distance",
    "boss_fit",
    "boss_predict",
    "boss_model_to_dict",
    "boss_model_from_dict",
]

_ALPHA = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class SfaConfig:
    """Defaults for the symbolic transform and the ensemble search."""

    word_length_candidates: tuple[int, ...] = (16, 14, 12, 10, 8)
    alphabet_size: int = 4
    min_window: int = 10
    norm_mean_options: tuple[bool, ...] = (True, False)
    ensemble_retention_factor: float = 0.92
    max_window_grid: int = 50

    def __post_init__(self):
        if not 2 <= self.alphabet_size <= len(_ALPHA):
            raise ValueError(f"alphabet_size must be in [2, {len(_ALPHA)}]")
        for wl in self.word_length_candidates:
            if wl < 2 or wl % 2:
                raise ValueError("word lengths must be even and >= 2")
        if not self.word_length_candidates:
            raise ValueError("need at least one word length candidate")
        if not 0.0 < self.ensemble_retention_factor <= 1.0:
            raise ValueError("retention factor must be in (0, 1]")
        if self.min_window < 1 or self.max_window_grid < 1:
            raise ValueError("min_window and max_window_grid must be >= 1")
        if not self.norm_mean_options:
            raise ValueError("need at least one norm_mean option")


@dataclass(frozen=True)
class BossHistogram:
    """Word -> count map for one series under one member's transform."""

    counts: Mapping[str, int]

    def __post_init__(self):
        if any(c < 1 for c in self.counts.values()):
            raise ValueError("histogram counts must be positive")


def window_dft(s, window: int, word_len: int, norm_mean: bool) -> np.ndarray:
    """Fourier components of every sliding window, one row per window.

    Each row interleaves the real and imaginary parts of ``word_len/2``
    complex coefficients, scaled by the window's reciprocal standard
    deviation (nearly constant windows are left unscaled). ``norm_mean``
    drops the constant coefficient and starts at the first harmonic.
    """
    v = as_values(s)
    if window > v.shape[0]:
        raise ValueError(f"window {window} exceeds series length {v.shape[0]}")
    if word_len < 2 or word_len % 2:
        raise ValueError("word_len must be even and >= 2")
    wins = sliding_window_view(v, window)
    std = wins.std(axis=1, keepdims=True)
    scale = np.where(std < DEGENERATE_STD, 1.0, std)
    start = 1 if norm_mean else 0
    need = word_len // 2
    spectrum = np.fft.rfft(wins, axis=1)[:, start : start + need] / scale
    if spectrum.shape[1] < need:
        raise ValueError(f"word length {word_len} too large for window {window}")
    rows = np.empty((wins.shape[0], word_len))
    rows[:, 0::2] = spectrum.real
    rows[:, 1::2] = spectrum.imag
    return rows


def fit_mcb_bins(rows: np.ndarray, alphabet_size: int) -> np.ndarray:
    """Equi-depth breakpoints per coefficient column.

    Returns an (n_columns, alphabet_size - 1) array. A value's symbol is
    the index of the first breakpoint strictly exceeding it, so duplicated
    breakpoints simply leave some symbols unused.
    """
    quantiles = np.linspace(0.0, 1.0, alphabet_size + 1)[1:-1]
    return np.quantile(np.asarray(rows, dtype=np.float64), quantiles, axis=0).T


def _words(rows: np.ndarray, bins: np.ndarray) -> list[str]:
    symbols = np.empty(rows.shape, dtype=np.intp)
    for c in range(rows.shape[1]):
        symbols[:, c] = np.searchsorted(bins[c], rows[:, c], side="right")
    return ["".join(_ALPHA[k] for k in row) for row in symbols]


def _histogram_from_rows(rows: np.ndarray, bins: np.ndarray) -> BossHistogram:
    words = _words(rows, bins)
    kept = [w for i, w in enumerate(words) if i == 0 or w != words[i - 1]]
    return BossHistogram(dict(Counter(kept)))


def sfa_transform(
    s, window: int, word_len: int, bins: np.ndarray, norm_mean: bool
) -> BossHistogram:
    """Word histogram of one series; consecutive duplicate words count once."""
    return _histogram_from_rows(window_dft(s, window, word_len, norm_mean), bins)


def boss_distance(a: BossHistogram, b: BossHistogram) -> float:
    """Sum of squared count differences over the words present in ``a``.

    Words only ``b`` has are ignored, so the distance is asymmetric.
    """
    bc = b.counts
    return float(sum((v - bc.get(w, 0)) ** 2 for w, v in a.counts.items()))


def _nn_label(query: BossHistogram, hists, labels) -> str | None:
    best = math.inf
    best_label = None
    for h, lab in zip(hists, labels):
        d = boss_distance(query, h)
        if d < best:
            best, best_label = d, lab
    return best_label


def _loo_accuracy(hists: Sequence[BossHistogram], labels: Sequence[str]) -> float:
    n = len(hists)
    hits = 0
    for i in range(n):
        others = [(h, l) for j, (h, l) in enumerate(zip(hists, labels)) if j != i]
        if not others:
            return 0.0
        pred = _nn_label(hists[i], *zip(*others))
        hits += pred == labels[i]
    return hits / n


@dataclass(frozen=True)
class BossMember:
    window: int
    word_len: int
    norm_mean: bool
    bins: np.ndarray
    histograms: tuple[BossHistogram, ...]
    loo_accuracy: float


@dataclass(frozen=True)
class BossModel:
    members: tuple[BossMember, ...]
    labels: tuple[str, ...]
    best_loo: float


def _window_grid(length: int, cfg: SfaConfig) -> np.ndarray:
    lo = min(cfg.min_window, length)
    count = min(cfg.max_window_grid, length - lo + 1)
    return np.unique(np.round(np.linspace(lo, length, num=count)).astype(int))


def boss_fit(train, cfg: SfaConfig = SfaConfig(), seed: int = 0) -> BossModel:
    """Fit the ensemble on an equal-length training set.

    One member per (window size, norm_mean) pair on an evenly spaced window
    grid; the member's word length is the candidate with the best
    leave-one-out 1-NN accuracy (first wins ties). Members within
    ``ensemble_retention_factor`` of the best accuracy are retained.

    The fit is fully deterministic; ``seed`` is accepted for interface
    uniformity with the other classifiers and ignored.
    """
    del seed
    series = training_split(train)
    if not series:
        raise ValueError("empty training set")
    lengths = {len(s) for s in series}
    if len(lengths) != 1:
        raise ValueError(f"training series must share one length, got {sorted(lengths)}")
    length = lengths.pop()
    labels = tuple(s.label for s in series)

    members: list[BossMember] = []
    for window in _window_grid(length, cfg):
        window = int(window)
        candidates = [wl for wl in cfg.word_length_candidates if wl <= window]
        if not candidates:
            candidates = [max(2, window - window % 2)]
        for norm_mean in cfg.norm_mean_options:
            if norm_mean and window < 2:
                continue
            best: BossMember | None = None
            for word_len in candidates:
                rows = [window_dft(s, window, word_len, norm_mean) for s in series]
                bins = fit_mcb_bins(np.vstack(rows), cfg.alphabet_size)
                hists = tuple(_histogram_from_rows(r, bins) for r in rows)
                acc = _loo_accuracy(hists, labels)
                if best is None or acc > best.loo_accuracy:
                    best = BossMember(window, word_len, norm_mean, bins, hists, acc)
            members.append(best)

    best_loo = max(m.loo_accuracy for m in members)
    retained = tuple(
        m for m in members
        if m.loo_accuracy >= cfg.ensemble_retention_factor * best_loo
    )
    return BossModel(retained, labels, best_loo)


def boss_predict(model: BossModel, query) -> str:
    """Majority vote of the retained members' 1-NN histogram matches.

    Members whose window is longer than the query abstain; if every member
    abstains a ValueError is raised. Vote ties resolve to the earliest
    member whose prediction is among the tied labels.
    """
    qlen = as_values(query).shape[0]
    votes: list[str] = []
    for m in model.members:
        if qlen < m.window:
            continue
        hist = sfa_transform(query, m.window, m.word_len, m.bins, m.norm_mean)
        votes.append(_nn_label(hist, m.histograms, model.labels))
    if not votes:
        raise ValueError("query is shorter than every retained member's window")
    counts = Counter(votes)
    top = max(counts.values())
    tied = {lab for lab, c in counts.items() if c == top}
    for lab in votes:
        if lab in tied:
            return lab
    raise AssertionError("unreachable")


def boss_model_to_dict(model: BossModel) -> dict:
    """JSON-serializable form of a fitted model (self-contained)."""
    return {
        "kind": "boss",
        "labels": list(model.labels),
        "best_loo": model.best_loo,
        "members": [
            {
                "window": m.window,
                "word_len": m.word_len,
                "norm_mean": m.norm_mean,
                "bins": m.bins.tolist(),
                "histograms": [dict(h.counts) for h in m.histograms],
                "loo_accuracy": m.loo_accuracy,
            }
            for m in model.members
        ],
    }


def boss_model_from_dict(doc: dict) -> BossModel:
    if doc.get("kind") != "boss":
        raise ValueError("not a serialized boss model")
    members = tuple(
        BossMember(
            window=int(m["window"]),
            word_len=int(m["word_len"]),
            norm_mean=bool(m["norm_mean"]),
            bins=np.asarray(m["bins"], dtype=np.float64),
            histograms=tuple(
                BossHistogram({str(w): int(c) for w, c in h.items()})
                for h in m["histograms"]
            ),
            loo_accuracy=float(m["loo_accuracy"]),
        )
        for m in doc["members"]
    )
    return BossModel(members, tuple(doc["labels"]), float(doc["best_loo"]))
