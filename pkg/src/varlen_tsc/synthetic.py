"""Small synthetic shape datasets for experiments and sanity checks.

Classes are built from smooth base shapes (sines of different frequencies,
square/triangle waves, displaced bumps); instances of a class are copies of
the base shape, so all separation difficulty comes from the length
mechanisms applied afterwards.
"""

from __future__ import annotations

import numpy as np

from .generators import apply_mechanism, GeneratorConfig, Mechanism
from .series import Dataset, TimeSeries

__all__ = [
    "sine_wave",
    "square_wave",
    "triangle_wave",
    "gaussian_bump",
    "make_shape_dataset",
    "make_sine_dataset",
    "make_two_class_dataset",
    "variable_length_copies",
    "default_archive",
]


def sine_wave(length: int, freq: float, phase: float = 0.0) -> np.ndarray:
    t = np.linspace(0.0, 1.0, num=length)
    return np.sin(2.0 * np.pi * (freq * t + phase))


def square_wave(length: int, freq: float) -> np.ndarray:
    return np.sign(sine_wave(length, freq) + 1e-12)


def triangle_wave(length: int, freq: float) -> np.ndarray:
    t = np.linspace(0.0, 1.0, num=length)
    return 2.0 * np.abs(2.0 * (freq * t % 1.0) - 1.0) - 1.0


def gaussian_bump(length: int, center_frac: float, width_frac: float = 0.08) -> np.ndarray:
    t = np.linspace(0.0, 1.0, num=length)
    return np.exp(-0.5 * ((t - center_frac) / width_frac) ** 2)


def make_shape_dataset(
    name: str,
    shapes: dict[str, np.ndarray],
    n_train_per_class: int,
    n_test_per_class: int,
) -> Dataset:
    """Equal-length dataset with ``shapes[label]`` copied per instance.

    Instances interleave classes (label order), so no class occupies a
    contiguous index block.
    """
    labels = sorted(shapes)

    def block(count: int) -> list[TimeSeries]:
        return [
            TimeSeries(shapes[lab], lab) for _ in range(count) for lab in labels
        ]

    return Dataset(name, block(n_train_per_class), block(n_test_per_class))


def make_sine_dataset(
    name: str = "sine-freqs",
    freqs: tuple[float, ...] = (1.0, 2.0, 3.0),
    length: int = 100,
    n_train_per_class: int = 10,
    n_test_per_class: int = 5,
) -> Dataset:
    shapes = {str(i + 1): sine_wave(length, f) for i, f in enumerate(freqs)}
    return make_shape_dataset(name, shapes, n_train_per_class, n_test_per_class)


def make_two_class_dataset(
    name: str = "sine-vs-square",
    length: int = 100,
    n_train_per_class: int = 10,
    n_test_per_class: int = 5,
) -> Dataset:
    """Two clearly separable shape classes (low sine vs fast square)."""
    shapes = {"1": sine_wave(length, 1.0), "2": square_wave(length, 3.0)}
    return make_shape_dataset(name, shapes, n_train_per_class, n_test_per_class)


def variable_length_copies(
    series: list[TimeSeries],
    mechanism: Mechanism,
    seed: int,
    min_length: int = 1,
) -> list[TimeSeries]:
    """Apply one mechanism to every series with per-index seeded streams.

    ``min_length`` redraws an instance's stream until the generated series
    is at least that long, so probes that cannot tolerate near-empty
    fragments (e.g. leave-one-out shape studies) can skip them without
    changing the mechanism itself.
    """
    cfg = GeneratorConfig(seed=seed)
    out = []
    for i, s in enumerate(series):
        draw = 0
        while True:
            rng = np.random.default_rng(np.random.SeedSequence([seed, i, draw]))
            candidate = apply_mechanism(mechanism, s, rng, cfg)
            if len(candidate) >= min_length:
                out.append(candidate)
                break
            draw += 1
    return out


def default_archive(length: int = 100) -> list[Dataset]:
    """Three small datasets exercising different kinds of class structure."""
    bumps = {
        "1": gaussian_bump(length, 0.25),
        "2": gaussian_bump(length, 0.5),
        "3": gaussian_bump(length, 0.75),
    }
    return [
        make_sine_dataset("SineFreqs", length=length),
        make_two_class_dataset("SineVsSquare", length=length),
        make_shape_dataset("BumpPositions", bumps, n_train_per_class=10, n_test_per_class=5),
    ]
