"""Length-equalization techniques applied dataset-wide before classification.

Four real techniques plus a pass-through baseline:

* uniform scaling — linearly rescale every series to the dataset maximum
  length,
* suffix noise — pad the end with low-amplitude uniform noise,
* prefix+suffix noise — split the padding between both ends, centering the
  series,
* prefix+suffix zero — append a single 0 on each end (series stay unequal).

The pipeline order is process-then-normalize: padding noise is drawn against
the raw values and every series is z-normalized afterwards. Set
``normalize_first=True`` to flip the order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from .series import Dataset, TimeSeries, resample_linear, z_normalize

__all__ = [
    "PreprocessorKind",
    "Preprocessor",
    "rescale_uniform",
    "pad_suffix_noise",
    "pad_prefix_suffix_noise",
    "pad_prefix_suffix_zero",
    "apply_to_series",
    "apply_preprocessor",
    "EQUALIZING_KINDS",
]


class PreprocessorKind(str, enum.Enum):
    NO_PROCESSING = "no-processing"
    UNIFORM_SCALING = "uniform-scaling"
    SUFFIX_NOISE = "suffix-noise"
    PREFIX_SUFFIX_NOISE = "prefix-suffix-noise"
    PREFIX_SUFFIX_ZERO = "prefix-suffix-zero"


# Kinds guaranteed to produce equal-length output.
EQUALIZING_KINDS = frozenset(
    {
        PreprocessorKind.UNIFORM_SCALING,
        PreprocessorKind.SUFFIX_NOISE,
        PreprocessorKind.PREFIX_SUFFIX_NOISE,
    }
)


@dataclass(frozen=True)
class Preprocessor:
    kind: PreprocessorKind
    noise_amplitude: float = 0.001
    noise_seed: int = 0
    normalize_first: bool = False

    def __post_init__(self):
        if self.noise_amplitude <= 0:
            raise ValueError("noise_amplitude must be positive")

    def with_seed(self, noise_seed: int) -> "Preprocessor":
        return replace(self, noise_seed=noise_seed)


def rescale_uniform(s: TimeSeries, target: int) -> TimeSeries:
    """Stretch to ``target`` points; shrinking is refused (information loss)."""
    if len(s) > target:
        raise ValueError(f"series of length {len(s)} exceeds target {target}")
    return resample_linear(s, target)


def pad_suffix_noise(
    s: TimeSeries, target: int, amp: float, rng: np.random.Generator
) -> TimeSeries:
    """Append uniform noise from [0, amp) until the series reaches ``target``."""
    pad = target - len(s)
    if pad < 0:
        raise ValueError(f"series of length {len(s)} exceeds target {target}")
    if pad == 0:
        return s
    return s.with_values(np.concatenate([s.values, rng.uniform(0.0, amp, size=pad)]))


def pad_prefix_suffix_noise(
    s: TimeSeries, target: int, amp: float, rng: np.random.Generator
) -> TimeSeries:
    """Center the series in ``target`` points, noise-padding both ends.

    The padding splits floor/ceil so the original run sits at offset
    ``(target - L) // 2``.
    """
    pad = target - len(s)
    if pad < 0:
        raise ValueError(f"series of length {len(s)} exceeds target {target}")
    if pad == 0:
        return s
    noise = rng.uniform(0.0, amp, size=pad)
    front = pad // 2
    return s.with_values(np.concatenate([noise[:front], s.values, noise[front:]]))


def pad_prefix_suffix_zero(s: TimeSeries) -> TimeSeries:
    """Wrap the series in a single zero on each side (lengths stay unequal)."""
    return s.with_values(np.concatenate([[0.0], s.values, [0.0]]))


def _series_rng(p: Preprocessor, split_salt: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([p.noise_seed, split_salt, index]))


def _process_one(
    p: Preprocessor, s: TimeSeries, target: int, rng: np.random.Generator
) -> TimeSeries:
    if p.kind is PreprocessorKind.NO_PROCESSING:
        return s
    if p.kind is PreprocessorKind.UNIFORM_SCALING:
        return rescale_uniform(s, target)
    if p.kind is PreprocessorKind.SUFFIX_NOISE:
        return pad_suffix_noise(s, target, p.noise_amplitude, rng)
    if p.kind is PreprocessorKind.PREFIX_SUFFIX_NOISE:
        return pad_prefix_suffix_noise(s, target, p.noise_amplitude, rng)
    if p.kind is PreprocessorKind.PREFIX_SUFFIX_ZERO:
        return pad_prefix_suffix_zero(s)
    raise ValueError(f"unknown preprocessor kind {p.kind!r}")


def apply_to_series(
    p: Preprocessor, series, target: int | None = None, split_salt: int = 0
) -> list[TimeSeries]:
    """Process-then-normalize a bare list of series.

    ``target`` defaults to the list's own maximum length; pass the dataset
    maximum when the list is one split of a larger whole. ``split_salt``
    keeps noise streams of different splits apart.
    """
    if target is None:
        target = max(len(s) for s in series)
    out = []
    for i, s in enumerate(series):
        rng = _series_rng(p, split_salt, i)
        if p.normalize_first:
            out.append(_process_one(p, z_normalize(s), target, rng))
        else:
            out.append(z_normalize(_process_one(p, s, target, rng)))
    return out


def apply_preprocessor(p: Preprocessor, d: Dataset) -> Dataset:
    """Equalize (per ``p.kind``) and z-normalize every series in the dataset.

    Padding/rescaling targets the maximum length over train and test.
    """
    target = d.max_length
    return Dataset(
        name=d.name,
        train=apply_to_series(p, d.train, target, split_salt=0),
        test=apply_to_series(p, d.test, target, split_salt=1),
    )
