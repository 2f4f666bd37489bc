"""One-nearest-neighbour classification over any distance measure."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .distances import DISTANCE_FUNCS, DistanceMeasure
from .series import Dataset, TimeSeries

__all__ = ["NnModel", "nn_classify", "evaluate_accuracy", "dataset_accuracy"]


@dataclass(frozen=True)
class NnModel:
    """Lazy 1-NN model: stores the training set and a measure."""

    train: tuple[TimeSeries, ...]
    measure: DistanceMeasure

    def __post_init__(self):
        if not self.train:
            raise ValueError("empty training set")

    def predict(self, query: TimeSeries) -> str:
        return nn_classify(self, query)


def nn_classify(model: NnModel, query: TimeSeries) -> str:
    """Label of the nearest training series; ties go to the lowest index."""
    func = DISTANCE_FUNCS[model.measure]
    best = float("inf")
    best_label = model.train[0].label
    for s in model.train:
        d = func(query, s)
        if d < best:
            best = d
            best_label = s.label
    return best_label


def evaluate_accuracy(model: NnModel, test: Sequence[TimeSeries]) -> float:
    """Fraction of test instances the model labels correctly."""
    if not test:
        raise ValueError("empty test set")
    hits = sum(model.predict(s) == s.label for s in test)
    return hits / len(test)


def dataset_accuracy(dataset: Dataset, measure: DistanceMeasure) -> float:
    """Convenience wrapper: fit on train, score on test."""
    return evaluate_accuracy(NnModel(tuple(dataset.train), measure), dataset.test)
