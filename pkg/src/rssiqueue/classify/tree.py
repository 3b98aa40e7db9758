"""Greedy binary decision tree maximizing information gain."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

import numpy as np

from rssiqueue.classify.base import Leaf, Learner, ModelKind, Node, Split, TreeParams

if TYPE_CHECKING:
    from collections.abc import Sequence

    from rssiqueue.classify.base import ModelParams, ModelSpec

# gains closer than this are treated as equal
_GAIN_TOLERANCE = 1e-12


def entropy(in_queue: np.ndarray, total: np.ndarray) -> np.ndarray:
    """Binary entropy in bits of nodes holding ``in_queue`` positives out of ``total`` rows."""
    p = np.asarray(in_queue, dtype=np.float64) / np.asarray(total, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = -(p * np.log2(p) + (1 - p) * np.log2(1 - p))
    return np.nan_to_num(terms, nan=0.0)


class SplitChoice:
    __slots__ = ("feature", "threshold", "gain")

    def __init__(self, feature: int, threshold: float, gain: float) -> None:
        self.feature = feature
        self.threshold = threshold
        self.gain = gain


def best_split(
    features: np.ndarray, labels: np.ndarray, rows: np.ndarray, candidates: Sequence[int]
) -> Optional[SplitChoice]:
    """Find the split of ``rows`` with the highest information gain.

    Thresholds are training values: a split sends ``x <= threshold`` left, where ``threshold`` is the
    largest value on the left. Among equal gains on one feature the most balanced split wins; across
    features the first candidate wins.

    Args:
        features: The full training matrix
        labels: Integer labels of the full training set
        rows: Indices of the rows reaching the node
        candidates: Feature columns to consider, in priority order

    Returns:
        The chosen split, ``None`` when no candidate feature takes two distinct values
    """
    n = len(rows)
    node_labels = labels[rows]
    positives = int(node_labels.sum())
    parent = float(entropy(np.array(positives), np.array(n)))
    left_n = np.arange(1, n)
    right_n = n - left_n
    best: Optional[SplitChoice] = None
    for feature in candidates:
        column = features[rows, feature]
        order = np.argsort(column, kind="stable")
        values = column[order]
        boundary = values[:-1] < values[1:]
        if not boundary.any():
            continue
        left_pos = np.cumsum(node_labels[order])[:-1]
        children = (left_n * entropy(left_pos, left_n) + right_n * entropy(positives - left_pos, right_n)) / n
        gain = np.where(boundary, parent - children, -np.inf)
        top = float(gain.max())
        if best is not None and top <= best.gain + _GAIN_TOLERANCE:
            continue
        tied = np.flatnonzero(boundary & (gain >= top - _GAIN_TOLERANCE))
        position = int(tied[np.argmin(np.abs(2 * left_n[tied] - n))])
        best = SplitChoice(feature=int(feature), threshold=float(values[position]), gain=top)
    return best


def grow_tree(
    features: np.ndarray,
    labels: np.ndarray,
    rows: np.ndarray,
    spec: ModelSpec,
    rng: Optional[np.random.Generator] = None,
    depth: int = 0,
) -> Node:
    """Grow a tree over ``rows``; ``rng`` draws the per-split feature subset when fewer than all are used."""
    total = len(rows)
    in_queue = int(labels[rows].sum())
    # ties go to not-in-queue
    leaf = Leaf(label=int(2 * in_queue > total), in_queue=in_queue, total=total)
    if in_queue in (0, total) or total < spec.min_samples_split:
        return leaf
    if spec.max_depth is not None and depth >= spec.max_depth:
        return leaf
    n_features = features.shape[1]
    n_split = min(spec.split_features(), n_features)
    if n_split < n_features and rng is not None:
        candidates = sorted(int(c) for c in rng.choice(n_features, size=n_split, replace=False))
    else:
        candidates = list(range(n_features))
    split = best_split(features, labels, rows, candidates)
    if split is None:
        return leaf
    goes_left = features[rows, split.feature] <= split.threshold
    return Split(
        feature=split.feature,
        threshold=split.threshold,
        left=grow_tree(features, labels, rows[goes_left], spec, rng, depth + 1),
        right=grow_tree(features, labels, rows[~goes_left], spec, rng, depth + 1),
    )


def _route(node: Node, features: np.ndarray, rows: np.ndarray, out: np.ndarray) -> None:
    if isinstance(node, Leaf):
        out[rows] = node.label
        return
    goes_left = features[rows, node.feature] <= node.threshold
    _route(node.left, features, rows[goes_left], out)
    _route(node.right, features, rows[~goes_left], out)


def predict_tree(root: Node, features: np.ndarray) -> np.ndarray:
    out = np.zeros(len(features), dtype=np.int64)
    _route(root, features, np.arange(len(features)), out)
    return out


def tree_depth(node: Node) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + max(tree_depth(node.left), tree_depth(node.right))


class DecisionTreeLearner(Learner):
    kind = ModelKind.DECISION_TREE

    def fit(self, features: np.ndarray, labels: np.ndarray, spec: ModelSpec) -> TreeParams:
        rng = np.random.default_rng(spec.seed)
        return TreeParams(root=grow_tree(features, labels, np.arange(len(labels)), spec, rng))

    def predict(self, params: ModelParams, features: np.ndarray) -> np.ndarray:
        if not isinstance(params, TreeParams):
            msg = f"Decision tree cannot predict with {type(params).__name__}"
            raise TypeError(msg)
        return predict_tree(params.root, features)
