"""Core series/dataset containers and interpolation primitives.

Everything downstream (generators, preprocessors, distances, classifiers)
works on these two containers. Series are 1-D, index-ordered, real-valued;
there is no timestamp axis.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TimeSeries",
    "Dataset",
    "as_values",
    "training_split",
    "z_normalize",
    "resample_linear",
    "sample_at_interval",
]

# Population std below this is treated as a constant (degenerate) series.
DEGENERATE_STD = 1e-12


@dataclass(frozen=True)
class TimeSeries:
    """A labelled, possibly variable-length sequence of observations."""

    values: np.ndarray
    label: str

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1:
            raise ValueError(f"series must be 1-D, got shape {v.shape}")
        if v.size < 1:
            raise ValueError("series must contain at least one value")
        if not np.all(np.isfinite(v)):
            raise ValueError("series values must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "label", str(self.label))

    def __len__(self) -> int:
        return self.values.shape[0]

    def with_values(self, values) -> "TimeSeries":
        """New series with the same label and different values."""
        return TimeSeries(values, self.label)


@dataclass
class Dataset:
    """A named train/test split of labelled series (lengths may differ)."""

    name: str
    train: list[TimeSeries]
    test: list[TimeSeries]

    def __post_init__(self):
        if not self.train or not self.test:
            raise ValueError(f"dataset {self.name!r}: train and test must be non-empty")
        train_labels = {s.label for s in self.train}
        missing = {s.label for s in self.test} - train_labels
        if missing:
            warnings.warn(
                f"dataset {self.name!r}: test labels {sorted(missing)} never occur in "
                f"train; accuracy on those instances cannot exceed zero",
                stacklevel=2,
            )

    @property
    def max_length(self) -> int:
        return max(len(s) for s in self.train + self.test)

    def labels(self) -> list[str]:
        return sorted({s.label for s in self.train})


def as_values(s) -> np.ndarray:
    """Coerce a TimeSeries or array-like to a float64 vector."""
    if isinstance(s, TimeSeries):
        return s.values
    return np.asarray(s, dtype=np.float64)


def training_split(data) -> list[TimeSeries]:
    """Training series of a Dataset, or a bare sequence passed through."""
    if isinstance(data, Dataset):
        return list(data.train)
    return list(data)


def z_normalize(s: TimeSeries) -> TimeSeries:
    """Shift/scale to mean 0 and population std 1.

    Constant (near-zero std) series map to all zeros instead of raising, so
    that degenerate fragments coming out of the generators survive the
    pipeline.
    """
    v = s.values
    std = v.std()  # population (ddof=0)
    if std < DEGENERATE_STD:
        return s.with_values(np.zeros_like(v))
    return s.with_values((v - v.mean()) / std)


def resample_linear(s: TimeSeries, target_len: int) -> TimeSeries:
    """Linearly resample to ``target_len`` points.

    Endpoint-inclusive convention: output point ``i`` interpolates the input
    at position ``i * (L-1) / (target_len-1)``, so first/last values are
    preserved whenever ``target_len >= 2``. A length-1 input replicates.
    """
    if target_len < 1:
        raise ValueError("target_len must be >= 1")
    v = s.values
    n = v.shape[0]
    positions = np.linspace(0.0, n - 1, num=target_len)
    return s.with_values(np.interp(positions, np.arange(n), v))


def sample_at_interval(s: TimeSeries, step: float) -> TimeSeries:
    """Interpolated values at positions 0, step, 2*step, ... while <= L-1."""
    if step <= 0:
        raise ValueError("step must be positive")
    v = s.values
    n = v.shape[0]
    # 1e-9 slack keeps an endpoint that float rounding pushed just past L-1
    count = int((n - 1) / step + 1e-9) + 1
    positions = np.minimum(np.arange(count) * step, n - 1)
    return s.with_values(np.interp(positions, np.arange(n), v))
