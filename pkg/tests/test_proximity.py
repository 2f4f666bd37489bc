import json

import numpy as np
import pytest

from varlen_tsc import Dataset, DistanceMeasure, TimeSeries
from varlen_tsc.proximity import (
    PfConfig,
    PfLeaf,
    PfNode,
    _majority,
    pf_fit,
    pf_model_from_dict,
    pf_model_to_dict,
    pf_predict,
)
from varlen_tsc.synthetic import make_sine_dataset, make_two_class_dataset


class TestConfig:
    def test_defaults(self):
        cfg = PfConfig()
        assert cfg.num_trees == 100
        assert cfg.candidates_per_node == 5
        assert set(cfg.measure_pool) == set(DistanceMeasure)

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            PfConfig(num_trees=0)
        with pytest.raises(ValueError):
            PfConfig(candidates_per_node=0)
        with pytest.raises(ValueError):
            PfConfig(measure_pool=())
        with pytest.raises(ValueError):
            PfConfig(seed=-1)


def test_majority_tie_takes_smallest_label():
    assert _majority(["b", "a"]) == "a"
    assert _majority(["b", "b", "a"]) == "b"


def test_single_class_training_set_gives_leaf_trees():
    train = [TimeSeries(np.arange(5.0) + i, "only") for i in range(4)]
    model = pf_fit(train, PfConfig(num_trees=3))
    assert all(isinstance(t, PfLeaf) for t in model.trees)
    assert pf_predict(model, train[0]) == "only"


def test_separable_classes_recovered():
    d = make_two_class_dataset(length=40, n_train_per_class=5, n_test_per_class=3)
    model = pf_fit(d, PfConfig(num_trees=20, seed=1))
    hits = sum(pf_predict(model, s) == s.label for s in d.test)
    assert hits == len(d.test)


def test_training_set_self_accuracy_is_perfect():
    d = make_two_class_dataset(length=30, n_train_per_class=5, n_test_per_class=1)
    model = pf_fit(d, PfConfig(num_trees=10, seed=0))
    assert all(pf_predict(model, s) == s.label for s in d.train)


def test_same_seed_reproduces_model():
    d = make_sine_dataset(length=25, n_train_per_class=4, n_test_per_class=1)
    a = pf_fit(d, PfConfig(num_trees=5, seed=7))
    b = pf_fit(d, PfConfig(num_trees=5, seed=7))
    assert pf_model_to_dict(a) == pf_model_to_dict(b)


def test_different_seeds_diverge():
    d = make_sine_dataset(length=25, n_train_per_class=4, n_test_per_class=1)
    a = pf_fit(d, PfConfig(num_trees=5, seed=0))
    b = pf_fit(d, PfConfig(num_trees=5, seed=1))
    assert pf_model_to_dict(a) != pf_model_to_dict(b)


def test_measure_pool_restriction_is_respected():
    d = make_two_class_dataset(length=20, n_train_per_class=4, n_test_per_class=1)
    pool = (DistanceMeasure.DTW_FULL,)
    model = pf_fit(d, PfConfig(num_trees=4, measure_pool=pool, seed=3))

    def walk(tree):
        if isinstance(tree, PfNode):
            assert tree.measure is DistanceMeasure.DTW_FULL
            for child in tree.children:
                walk(child)

    for tree in model.trees:
        walk(tree)


def test_variable_length_training_data_supported():
    # elastic measures make unequal lengths legal inside the trees
    train = [
        TimeSeries(np.sin(np.linspace(0, 6.0, n)), "slow") for n in (20, 24, 28)
    ] + [
        TimeSeries(np.sin(np.linspace(0, 40.0, n)), "fast") for n in (20, 24, 28)
    ]
    model = pf_fit(train, PfConfig(num_trees=10, seed=2, measure_pool=(DistanceMeasure.DTW_FULL,)))
    assert all(pf_predict(model, s) == s.label for s in train)


def test_predict_majority_tie_takes_smallest_label():
    # two leaf-only trees voting for different labels
    model_doc = {
        "kind": "pf",
        "labels": ["a", "b"],
        "trees": [{"leaf": "b"}, {"leaf": "a"}],
    }
    model = pf_model_from_dict(model_doc)
    assert pf_predict(model, TimeSeries([1.0], "a")) == "a"


class TestSerialization:
    def test_round_trip_predictions(self):
        d = make_two_class_dataset(length=30, n_train_per_class=4, n_test_per_class=2)
        model = pf_fit(d, PfConfig(num_trees=6, seed=5))
        doc = json.loads(json.dumps(pf_model_to_dict(model)))
        clone = pf_model_from_dict(doc)
        for s in d.test + d.train:
            assert pf_predict(clone, s) == pf_predict(model, s)

    def test_round_trip_is_lossless(self):
        d = make_sine_dataset(length=20, n_train_per_class=3, n_test_per_class=1)
        model = pf_fit(d, PfConfig(num_trees=3, seed=9))
        doc = pf_model_to_dict(model)
        assert pf_model_to_dict(pf_model_from_dict(doc)) == doc
