"""Mechanisms that turn an equal-length dataset into a variable-length one.

Five mechanisms are modelled. Two vary the effective sampling rate
(uniform and non-uniform resampling of the underlying signal), three vary
the observation window (losing the suffix, the prefix, or both). Dataset
modification randomly selects a fraction of instances (default 85%) and
leaves the rest untouched.

All randomness flows through ``numpy.random.Generator`` (PCG64) seeded from
explicit integers, so every output is a deterministic, platform-portable
function of (input, seed).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .series import Dataset, TimeSeries, sample_at_interval

__all__ = [
    "Mechanism",
    "GeneratorConfig",
    "take_prefix",
    "take_suffix",
    "take_subsequence",
    "gen_uniform_sampling",
    "gen_nonuniform_sampling",
    "gen_prefix",
    "gen_suffix",
    "gen_subsequence",
    "apply_mechanism",
    "modify_dataset",
]

# Walk steps are clamped here so the non-uniform sampler always moves forward.
MIN_WALK_STEP = 0.05


class Mechanism(str, enum.Enum):
    """How a dataset came to contain series of varying lengths."""

    UNIFORM_SAMPLING = "uniform-sampling"
    NON_UNIFORM_SAMPLING = "non-uniform-sampling"
    PREFIX = "prefix"
    SUFFIX = "suffix"
    SUBSEQUENCE = "subsequence"


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    modified_fraction: float = 0.85
    walk_std: float = 0.2

    def __post_init__(self):
        if not 0.0 < self.modified_fraction <= 1.0:
            raise ValueError("modified_fraction must be in (0, 1]")
        if self.walk_std <= 0:
            raise ValueError("walk_std must be positive")


def take_prefix(s: TimeSeries, removed: int) -> TimeSeries:
    """Drop the last ``removed`` points (keep a prefix)."""
    n = len(s)
    if not 1 <= removed <= n - 1:
        raise ValueError(f"removed must be in [1, {n - 1}]")
    return s.with_values(s.values[: n - removed])


def take_suffix(s: TimeSeries, removed: int) -> TimeSeries:
    """Drop the first ``removed`` points (keep a suffix)."""
    n = len(s)
    if not 1 <= removed <= n - 1:
        raise ValueError(f"removed must be in [1, {n - 1}]")
    return s.with_values(s.values[removed:])


def take_subsequence(s: TimeSeries, length: int, offset: int) -> TimeSeries:
    """Keep ``length`` contiguous points starting at ``offset``."""
    n = len(s)
    if not 1 <= length <= n - 1:
        raise ValueError(f"length must be in [1, {n - 1}]")
    if not 0 <= offset <= n - length:
        raise ValueError(f"offset must be in [0, {n - length}]")
    return s.with_values(s.values[offset : offset + length])


def gen_uniform_sampling(s: TimeSeries, rng: np.random.Generator) -> TimeSeries:
    """Resample at a fixed interval L/L' with L' drawn uniformly from 1..L."""
    n = len(s)
    if n < 2:
        raise ValueError("uniform sampling needs length >= 2")
    new_len = int(rng.integers(1, n + 1))
    return sample_at_interval(s, n / new_len)


def gen_nonuniform_sampling(
    s: TimeSeries, rng: np.random.Generator, walk_std: float = 0.2
) -> TimeSeries:
    """Resample at a randomly drifting interval.

    The step size follows a random walk: starting from 1, each step is drawn
    from Normal(previous step, walk_std) and clamped to a small positive
    floor so the position always advances. Values are linearly interpolated
    at the visited positions; the start point is always emitted.
    """
    n = len(s)
    if n < 2:
        raise ValueError("non-uniform sampling needs length >= 2")
    positions = [0.0]
    t = 0.0
    delta = 1.0
    while True:
        delta = max(rng.normal(delta, walk_std), MIN_WALK_STEP)
        t += delta
        if t > n - 1:
            break
        positions.append(t)
    values = np.interp(np.asarray(positions), np.arange(n), s.values)
    return s.with_values(values)


def gen_prefix(s: TimeSeries, rng: np.random.Generator) -> TimeSeries:
    """Remove a suffix of random length drawn uniformly from 1..L-1."""
    n = len(s)
    if n < 2:
        raise ValueError("prefix mechanism needs length >= 2")
    return take_prefix(s, int(rng.integers(1, n)))


def gen_suffix(s: TimeSeries, rng: np.random.Generator) -> TimeSeries:
    """Remove a prefix of random length drawn uniformly from 1..L-1."""
    n = len(s)
    if n < 2:
        raise ValueError("suffix mechanism needs length >= 2")
    return take_suffix(s, int(rng.integers(1, n)))


def gen_subsequence(s: TimeSeries, rng: np.random.Generator) -> TimeSeries:
    """Keep a random contiguous subsequence.

    Length is uniform on 1..L-1, then the offset is uniform over all valid
    positions (either side may lose zero points).
    """
    n = len(s)
    if n < 3:
        raise ValueError("subsequence mechanism needs length >= 3")
    length = int(rng.integers(1, n))
    offset = int(rng.integers(0, n - length + 1))
    return take_subsequence(s, length, offset)


def apply_mechanism(
    mech: Mechanism, s: TimeSeries, rng: np.random.Generator, cfg: GeneratorConfig
) -> TimeSeries:
    if mech is Mechanism.UNIFORM_SAMPLING:
        return gen_uniform_sampling(s, rng)
    if mech is Mechanism.NON_UNIFORM_SAMPLING:
        return gen_nonuniform_sampling(s, rng, cfg.walk_std)
    if mech is Mechanism.PREFIX:
        return gen_prefix(s, rng)
    if mech is Mechanism.SUFFIX:
        return gen_suffix(s, rng)
    if mech is Mechanism.SUBSEQUENCE:
        return gen_subsequence(s, rng)
    raise ValueError(f"unknown mechanism {mech!r}")


def _series_rng(cfg: GeneratorConfig, split_salt: int, index: int) -> np.random.Generator:
    # per-series stream: determinism must not depend on iteration/scheduling
    return np.random.default_rng(np.random.SeedSequence([cfg.seed, split_salt, index]))


def _modify_split(
    series: list[TimeSeries], mech: Mechanism, cfg: GeneratorConfig, split_salt: int
) -> list[TimeSeries]:
    n = len(series)
    n_modify = int(cfg.modified_fraction * n)
    select_rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, split_salt]))
    chosen = set(select_rng.choice(n, size=n_modify, replace=False).tolist())
    out = []
    for i, s in enumerate(series):
        if i in chosen:
            out.append(apply_mechanism(mech, s, _series_rng(cfg, split_salt, i), cfg))
        else:
            out.append(s)
    return out


def modify_dataset(d: Dataset, mech: Mechanism, cfg: GeneratorConfig) -> Dataset:
    """Modify a random 85% (by default) of train and of test independently.

    Models corrupting an equal-length archive, so it rejects datasets whose
    series lengths already differ.
    """
    lengths = {len(s) for s in d.train + d.test}
    if len(lengths) != 1:
        raise ValueError(
            f"dataset {d.name!r} has unequal series lengths {sorted(lengths)}; "
            "mechanisms apply to equal-length archives only"
        )
    if lengths.pop() < 3:
        raise ValueError("mechanisms need series of length >= 3")
    return Dataset(
        name=d.name,
        train=_modify_split(d.train, mech, cfg, split_salt=0),
        test=_modify_split(d.test, mech, cfg, split_salt=1),
    )
