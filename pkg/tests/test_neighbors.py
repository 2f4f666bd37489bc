import numpy as np
import pytest

from varlen_tsc import Dataset, DistanceMeasure, TimeSeries
from varlen_tsc.neighbors import (
    NnModel,
    dataset_accuracy,
    evaluate_accuracy,
    nn_classify,
)


def ts(*vals, label="a"):
    return TimeSeries(np.asarray(vals, dtype=np.float64), label)


def test_rejects_empty_training_set():
    with pytest.raises(ValueError):
        NnModel((), DistanceMeasure.EUCLIDEAN_TRUNCATE)


def test_nearest_neighbour_wins():
    model = NnModel(
        (ts(0, 0, label="lo"), ts(10, 10, label="hi")),
        DistanceMeasure.EUCLIDEAN_TRUNCATE,
    )
    assert nn_classify(model, ts(1, 1)) == "lo"
    assert nn_classify(model, ts(9, 9)) == "hi"
    assert model.predict(ts(9, 9)) == "hi"


def test_tie_goes_to_lowest_index():
    model = NnModel(
        (ts(1, 1, label="b"), ts(-1, -1, label="a")),
        DistanceMeasure.EUCLIDEAN_TRUNCATE,
    )
    # query is equidistant from both exemplars
    assert nn_classify(model, ts(0, 0)) == "b"


def test_strictly_smaller_distance_replaces():
    model = NnModel(
        (ts(2, 2, label="far"), ts(0.5, 0.5, label="near")),
        DistanceMeasure.EUCLIDEAN_TRUNCATE,
    )
    assert nn_classify(model, ts(0, 0)) == "near"


def test_evaluate_accuracy_counts_hits():
    model = NnModel(
        (ts(0, 0, label="lo"), ts(10, 10, label="hi")),
        DistanceMeasure.EUCLIDEAN_TRUNCATE,
    )
    test = [ts(1, 1, label="lo"), ts(8, 8, label="hi"), ts(2, 2, label="hi")]
    assert evaluate_accuracy(model, test) == pytest.approx(2 / 3)


def test_dataset_accuracy_wraps_train_test():
    d = Dataset(
        "d",
        [ts(0, 0, label="lo"), ts(10, 10, label="hi")],
        [ts(1, 1, label="lo"), ts(9, 9, label="hi")],
    )
    assert dataset_accuracy(d, DistanceMeasure.EUCLIDEAN_TRUNCATE) == 1.0


def test_variable_length_queries_supported():
    model = NnModel(
        (ts(0, 0, 0, 0, label="flatish"), ts(0, 5, 0, 5, label="jumpy")),
        DistanceMeasure.DTW_FULL,
    )
    assert nn_classify(model, ts(0, 0, 0)) == "flatish"
    assert nn_classify(model, ts(5, 0, 5, 0, 5)) == "jumpy"
