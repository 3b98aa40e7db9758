from __future__ import annotations

import numpy as np
import pytest

from rssiqueue.classify import Leaf, ModelKind, ModelSpec, Split, TreeParams, train
from rssiqueue.classify.tree import best_split, entropy, grow_tree, predict_tree, tree_depth
from rssiqueue.testing.helpers import separable_dataset

TREE = ModelSpec(kind=ModelKind.DECISION_TREE)


@pytest.mark.parametrize(("in_queue", "total", "expected"), [(1, 2, 1.0), (0, 4, 0.0), (4, 4, 0.0)])
def test_entropy(in_queue: int, total: int, expected: float):
    assert float(entropy(np.array(in_queue), np.array(total))) == pytest.approx(expected)


class TestBestSplit:
    def test_threshold_is_largest_left_value(self):
        features = np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0], [4.0, 5.0]])
        labels = np.array([0, 0, 1, 1])
        split = best_split(features, labels, np.arange(4), [0, 1])
        assert split is not None
        assert (split.feature, split.threshold) == (0, 2.0)
        assert split.gain == pytest.approx(1.0)

    def test_first_feature_wins_a_tie(self):
        features = np.array([[1.0, 10.0], [2.0, 20.0], [3.0, 30.0], [4.0, 40.0]])
        split = best_split(features, np.array([0, 0, 1, 1]), np.arange(4), [1, 0])
        assert split is not None
        assert split.feature == 1

    def test_constant_features(self):
        features = np.ones((4, 2))
        assert best_split(features, np.array([0, 1, 0, 1]), np.arange(4), [0, 1]) is None


class TestGrowTree:
    def test_one_split_separates(self):
        features = np.array([[1.0], [2.0], [3.0], [4.0]])
        root = grow_tree(features, np.array([0, 0, 1, 1]), np.arange(4), TREE)
        assert root == Split(
            feature=0,
            threshold=2.0,
            left=Leaf(label=0, in_queue=0, total=2),
            right=Leaf(label=1, in_queue=2, total=2),
        )

    def test_inseparable_rows_majority_with_tie_to_not_in_queue(self):
        features = np.zeros((4, 3))
        assert grow_tree(features, np.array([1, 1, 0, 0]), np.arange(4), TREE) == Leaf(label=0, in_queue=2, total=4)
        assert grow_tree(features, np.array([1, 1, 1, 0]), np.arange(4), TREE).label == 1

    def test_max_depth(self, rng: np.random.Generator):
        features = rng.normal(size=(60, 9))
        labels = rng.integers(0, 2, size=60)
        spec = ModelSpec(kind=ModelKind.DECISION_TREE, max_depth=2)
        assert tree_depth(grow_tree(features, labels, np.arange(60), spec)) <= 2

    def test_memorizes_distinct_rows(self, rng: np.random.Generator):
        features = rng.normal(size=(80, 9))
        labels = rng.integers(0, 2, size=80)
        root = grow_tree(features, labels, np.arange(80), TREE)
        assert (predict_tree(root, features) == labels).all()

    def test_monotone_transform(self, rng: np.random.Generator):
        features = rng.uniform(-5, 5, size=(50, 9))
        labels = (features[:, 2] + rng.normal(scale=2, size=50) > 0).astype(np.int64)
        transformed = np.exp(features / 5)
        before = predict_tree(grow_tree(features, labels, np.arange(50), TREE), features)
        after = predict_tree(grow_tree(transformed, labels, np.arange(50), TREE), transformed)
        assert (before == after).all()


class TestDecisionTreeModel:
    def test_separable_dataset_needs_one_split(self, rng: np.random.Generator):
        dataset = separable_dataset(rng)
        model = train(dataset, TREE)
        assert isinstance(model.params, TreeParams)
        assert isinstance(model.params.root, Split)
        assert model.params.root.feature == 0
        assert tree_depth(model.params.root) == 1
