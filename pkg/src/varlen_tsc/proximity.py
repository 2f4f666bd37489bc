"""Proximity forest: trees that split on nearness to per-class exemplars.

Each node draws a handful of candidate splitters (a random distance measure
from the pool plus one random exemplar per class present at the node),
partitions the node's series by nearest exemplar, and keeps the candidate
with the best Gini gain. Recursion stops at pure nodes; a split that fails
to separate anything becomes a majority leaf. Queries descend every tree by
nearest exemplar and the forest takes a majority vote.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .distances import DISTANCE_FUNCS, DistanceMeasure
from .series import TimeSeries, training_split

__all__ = [
    "PfConfig",
    "Exemplar",
    "PfLeaf",
    "PfNode",
    "PfModel",
    "pf_fit",
    "pf_predict",
    "pf_model_to_dict",
    "pf_model_from_dict",
]


@dataclass(frozen=True)
class PfConfig:
    num_trees: int = 100
    candidates_per_node: int = 5
    measure_pool: tuple[DistanceMeasure, ...] = tuple(DistanceMeasure)
    seed: int = 0

    def __post_init__(self):
        if self.num_trees < 1:
            raise ValueError("num_trees must be >= 1")
        if self.candidates_per_node < 1:
            raise ValueError("candidates_per_node must be >= 1")
        if not self.measure_pool:
            raise ValueError("measure pool must be non-empty")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True)
class Exemplar:
    train_index: int
    values: np.ndarray


@dataclass(frozen=True)
class PfLeaf:
    label: str


@dataclass(frozen=True)
class PfNode:
    measure: DistanceMeasure
    exemplars: tuple[Exemplar, ...]
    children: tuple["PfTree", ...]


PfTree = Union[PfNode, PfLeaf]


@dataclass(frozen=True)
class PfModel:
    trees: tuple[PfTree, ...]
    labels: tuple[str, ...]


def _gini(counts: Counter) -> float:
    n = sum(counts.values())
    return 1.0 - sum((c / n) ** 2 for c in counts.values())


def _majority(labels: Sequence[str]) -> str:
    counts = Counter(labels)
    top = max(counts.values())
    return min(lab for lab, c in counts.items() if c == top)


def _partition(
    series: Sequence[TimeSeries],
    indices: Sequence[int],
    measure: DistanceMeasure,
    exemplars: Sequence[Exemplar],
) -> list[list[int]]:
    """Assign each index to its nearest exemplar (ties to the first)."""
    func = DISTANCE_FUNCS[measure]
    branches: list[list[int]] = [[] for _ in exemplars]
    for i in indices:
        best = math.inf
        pick = 0
        for k, ex in enumerate(exemplars):
            d = func(series[i].values, ex.values)
            if d < best:
                best, pick = d, k
        branches[pick].append(i)
    return branches


def _build_node(
    series: Sequence[TimeSeries],
    indices: list[int],
    cfg: PfConfig,
    rng: np.random.Generator,
) -> PfTree:
    labels = [series[i].label for i in indices]
    if len(set(labels)) == 1:
        return PfLeaf(labels[0])

    by_class: dict[str, list[int]] = {}
    for i in indices:
        by_class.setdefault(series[i].label, []).append(i)
    classes = sorted(by_class)

    parent_gini = _gini(Counter(labels))
    best_gain = -math.inf
    best: tuple[DistanceMeasure, tuple[Exemplar, ...], list[list[int]]] | None = None
    for _ in range(cfg.candidates_per_node):
        measure = cfg.measure_pool[rng.integers(len(cfg.measure_pool))]
        exemplars = []
        for cls in classes:
            members = by_class[cls]
            idx = members[rng.integers(len(members))]
            exemplars.append(Exemplar(idx, series[idx].values))
        exemplars = tuple(exemplars)
        branches = _partition(series, indices, measure, exemplars)
        child = sum(
            len(b) / len(indices) * _gini(Counter(series[i].label for i in b))
            for b in branches
            if b
        )
        gain = parent_gini - child
        if gain > best_gain:
            best_gain = gain
            best = (measure, exemplars, branches)

    measure, exemplars, branches = best
    kept = [(ex, b) for ex, b in zip(exemplars, branches) if b]
    if len(kept) < 2:
        return PfLeaf(_majority(labels))
    children = tuple(_build_node(series, b, cfg, rng) for _, b in kept)
    return PfNode(measure, tuple(ex for ex, _ in kept), children)


def pf_fit(train, cfg: PfConfig = PfConfig()) -> PfModel:
    """Grow ``cfg.num_trees`` proximity trees; deterministic in cfg.seed."""
    series = training_split(train)
    if not series:
        raise ValueError("empty training set")
    all_indices = list(range(len(series)))
    trees = []
    for t in range(cfg.num_trees):
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, t]))
        trees.append(_build_node(series, all_indices, cfg, rng))
    return PfModel(tuple(trees), tuple(sorted({s.label for s in series})))


def _route(tree: PfTree, query) -> str:
    node = tree
    while isinstance(node, PfNode):
        func = DISTANCE_FUNCS[node.measure]
        best = math.inf
        pick = 0
        for k, ex in enumerate(node.exemplars):
            d = func(query, ex.values)
            if d < best:
                best, pick = d, k
        node = node.children[pick]
    return node.label


def pf_predict(model: PfModel, query) -> str:
    """Majority vote over trees; ties resolve to the smallest label."""
    votes = Counter(_route(tree, query) for tree in model.trees)
    top = max(votes.values())
    return min(lab for lab, c in votes.items() if c == top)


def _tree_to_dict(tree: PfTree) -> dict:
    if isinstance(tree, PfLeaf):
        return {"leaf": tree.label}
    return {
        "measure": tree.measure.value,
        "exemplars": [
            {"index": ex.train_index, "values": ex.values.tolist()}
            for ex in tree.exemplars
        ],
        "children": [_tree_to_dict(c) for c in tree.children],
    }


def _tree_from_dict(doc: dict) -> PfTree:
    if "leaf" in doc:
        return PfLeaf(str(doc["leaf"]))
    return PfNode(
        DistanceMeasure(doc["measure"]),
        tuple(
            Exemplar(int(ex["index"]), np.asarray(ex["values"], dtype=np.float64))
            for ex in doc["exemplars"]
        ),
        tuple(_tree_from_dict(c) for c in doc["children"]),
    )


def pf_model_to_dict(model: PfModel) -> dict:
    """JSON-serializable form of a fitted forest (self-contained)."""
    return {
        "kind": "pf",
        "labels": list(model.labels),
        "trees": [_tree_to_dict(t) for t in model.trees],
    }


def pf_model_from_dict(doc: dict) -> PfModel:
    if doc.get("kind") != "pf":
        raise ValueError("not a serialized proximity forest")
    return PfModel(
        tuple(_tree_from_dict(t) for t in doc["trees"]),
        tuple(doc["labels"]),
    )
