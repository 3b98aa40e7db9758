from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from rssiqueue.classify.base import ForestParams, Learner, ModelKind
from rssiqueue.classify.tree import grow_tree, predict_tree

if TYPE_CHECKING:
    from rssiqueue.classify.base import ModelParams, ModelSpec, Node


class RandomForestLearner(Learner):
    """Bagged trees with a random feature subset at every split, combined by strict majority vote."""

    kind = ModelKind.RANDOM_FOREST

    def fit(self, features: np.ndarray, labels: np.ndarray, spec: ModelSpec) -> ForestParams:
        n = len(labels)
        bag_size = max(1, round(spec.bag_fraction * n))
        trees: list[Node] = []
        # one independent generator per member
        for child in np.random.SeedSequence(spec.seed).spawn(spec.n_trees):
            rng = np.random.default_rng(child)
            bag = rng.integers(0, n, size=bag_size)
            trees.append(grow_tree(features, labels, bag, spec, rng))
        return ForestParams(trees=tuple(trees))

    def votes(self, params: ForestParams, features: np.ndarray) -> np.ndarray:
        """Number of members voting in-queue per row."""
        votes = np.zeros(len(features), dtype=np.int64)
        for root in params.trees:
            votes += predict_tree(root, features)
        return votes

    def predict(self, params: ModelParams, features: np.ndarray) -> np.ndarray:
        if not isinstance(params, ForestParams):
            msg = f"Random forest cannot predict with {type(params).__name__}"
            raise TypeError(msg)
        # a tie resolves to not-in-queue
        return (2 * self.votes(params, features) > len(params.trees)).astype(np.int64)
