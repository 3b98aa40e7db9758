from __future__ import annotations

import enum
import math
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Any, ClassVar, Optional, Union

from msgspec import Struct
from pydantic import Field

from rssiqueue.classify.dataset import N_FEATURES, Imputation
from rssiqueue.core import ConfigModel

if TYPE_CHECKING:
    import numpy as np

__all__ = (
    "ForestParams",
    "Leaf",
    "Learner",
    "ModelKind",
    "ModelParams",
    "ModelSpec",
    "NaiveBayesParams",
    "Node",
    "Split",
    "TrainedModel",
    "TreeParams",
)


class ModelKind(str, enum.Enum):
    NAIVE_BAYES = "naive_bayes"
    DECISION_TREE = "decision_tree"
    RANDOM_FOREST = "random_forest"


class ModelSpec(ConfigModel):
    """Classifier kind and hyperparameters."""

    kind: ModelKind = ModelKind.RANDOM_FOREST
    # None means unlimited
    max_depth: Optional[int] = Field(default=None, ge=1)
    min_samples_split: int = Field(default=2, ge=2)
    n_trees: int = Field(default=50, ge=1)
    # bootstrap size relative to the training set, drawn with replacement
    bag_fraction: float = Field(default=1.0, gt=0, le=1)
    # None means round(sqrt(9)) for forests and every feature for a single tree
    max_features: Optional[int] = Field(default=None, ge=1, le=N_FEATURES)
    seed: int = Field(default=0, ge=0)
    # added to every Gaussian variance, relative to the largest feature variance
    var_smoothing: float = Field(default=1e-9, ge=0)

    def split_features(self) -> int:
        if self.max_features is not None:
            return self.max_features
        if self.kind is ModelKind.RANDOM_FOREST:
            return max(1, round(math.sqrt(N_FEATURES)))
        return N_FEATURES


class Leaf(Struct, frozen=True, tag="leaf"):
    label: int
    in_queue: int
    total: int


class Split(Struct, frozen=True, tag="split"):
    """Internal node: rows with ``x[feature] <= threshold`` go left."""

    feature: int
    threshold: float
    left: Node
    right: Node


Node = Union[Split, Leaf]


class NaiveBayesParams(Struct, frozen=True, tag="naive_bayes"):
    """Per-class parameters, indexed by the integer label (0 = not-in-queue, 1 = in-queue)."""

    log_priors: tuple[float, float]
    continuous: tuple[int, ...]
    means: tuple[tuple[float, ...], tuple[float, ...]]
    variances: tuple[tuple[float, ...], tuple[float, ...]]
    binary: tuple[int, ...]
    # P(x = 1 | class), Laplace smoothed
    rates: tuple[tuple[float, ...], tuple[float, ...]]


class TreeParams(Struct, frozen=True, tag="decision_tree"):
    root: Node


class ForestParams(Struct, frozen=True, tag="random_forest"):
    trees: tuple[Node, ...]


ModelParams = Union[NaiveBayesParams, TreeParams, ForestParams]


class TrainedModel(Struct, frozen=True):
    kind: ModelKind
    spec: dict[str, Any]
    config_hash: str
    n_features: int
    imputation: Imputation
    params: ModelParams

    def model_spec(self) -> ModelSpec:
        return ModelSpec.model_validate(self.spec)


class Learner(ABC):
    """Fits and applies one kind of classifier on complete feature matrices."""

    kind: ClassVar[ModelKind]

    @abstractmethod
    def fit(self, features: np.ndarray, labels: np.ndarray, spec: ModelSpec) -> ModelParams:
        """Learn the model parameters.

        Args:
            features: ``(n, 9)`` matrix without missing values
            labels: ``(n,)`` integer labels, 1 for in-queue
            spec: Hyperparameters

        Returns:
            The learned parameters
        """
        raise NotImplementedError

    @abstractmethod
    def predict(self, params: ModelParams, features: np.ndarray) -> np.ndarray:
        """Predict integer labels for every row of ``features``."""
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}(kind={self.kind.value!r})"
