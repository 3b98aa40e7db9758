from __future__ import annotations

from typing import TYPE_CHECKING, Optional

import numpy as np

from rssiqueue.classify.base import ModelKind, ModelSpec, NaiveBayesParams, TrainedModel
from rssiqueue.classify.dataset import N_FEATURES, Imputation, impute
from rssiqueue.classify.naive_bayes import NaiveBayesLearner
from rssiqueue.classify.registry import learners
from rssiqueue.core import Label
from rssiqueue.core.exceptions import ArityError, TrainingError
from rssiqueue.core.logging import get_logger

if TYPE_CHECKING:
    from collections.abc import Sequence

    from rssiqueue.classify.dataset import Dataset
    from rssiqueue.core import FeatureVector

logger = get_logger(__name__)


def train(dataset: Dataset, spec: Optional[ModelSpec] = None, *, config_hash: str = "") -> TrainedModel:
    """Fit a classifier on a labeled dataset.

    Missing features are imputed with fill values learned from ``dataset``; the fill values
    travel with the model.

    Args:
        dataset: Labeled feature vectors
        spec: Classifier kind and hyperparameters, a default random forest if omitted
        config_hash: Fingerprint of the pipeline configuration that produced the features

    Returns:
        The trained model

    Raises:
        TrainingError: If the dataset does not contain both classes
    """
    spec = spec or ModelSpec()
    counts = dataset.class_counts()
    if min(counts.values()) == 0:
        msg = f"Training needs examples of both classes, got {counts}"
        raise TrainingError(msg)
    vectors = dataset.vectors
    imputation = Imputation.fit(vectors)
    params = learners.get(spec.kind).fit(impute(vectors, imputation), dataset.labels, spec)
    logger.debug("model trained", kind=spec.kind.value, examples=len(dataset), **counts)
    return TrainedModel(
        kind=spec.kind,
        spec=spec.model_dump(mode="json"),
        config_hash=config_hash,
        n_features=N_FEATURES,
        imputation=imputation,
        params=params,
    )


def _as_matrix(model: TrainedModel, features: Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
    matrix = np.asarray(features, dtype=np.float64)
    if matrix.ndim == 1:
        matrix = matrix.reshape(1, -1)
    if matrix.ndim != 2 or matrix.shape[1] != model.n_features:  # noqa: PLR2004
        msg = f"Expected feature vectors of arity {model.n_features}, got shape {matrix.shape}"
        raise ArityError(msg)
    if np.isnan(matrix).any():
        msg = "Feature vectors must be imputed before prediction"
        raise ArityError(msg)
    return matrix


def predict(model: TrainedModel, vector: Sequence[float] | np.ndarray) -> Label:
    """Classify one complete (imputed) feature vector of arity 9.

    Raises:
        ArityError: If the vector has another arity or still has missing values
    """
    matrix = _as_matrix(model, vector)
    if len(matrix) != 1:
        msg = f"Expected a single feature vector, got {len(matrix)}"
        raise ArityError(msg)
    return Label.from_int(int(learners.get(model.kind).predict(model.params, matrix)[0]))


def predict_matrix(model: TrainedModel, features: Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
    """Integer labels (1 = in-queue) for every row of a complete feature matrix."""
    matrix = _as_matrix(model, features)
    if not len(matrix):
        return np.zeros(0, dtype=np.int64)
    return learners.get(model.kind).predict(model.params, matrix)


def predict_many(model: TrainedModel, vectors: Sequence[FeatureVector]) -> list[Label]:
    """Impute with the model's training-time fill values, then classify every vector."""
    if not vectors:
        return []
    predicted = predict_matrix(model, impute(vectors, model.imputation))
    return [Label.from_int(int(value)) for value in predicted]


def predict_proba(model: TrainedModel, vectors: Sequence[FeatureVector]) -> np.ndarray:
    """Naive Bayes posterior per vector: column 0 not-in-queue, column 1 in-queue.

    Raises:
        TypeError: If the model is not a Naive Bayes model
    """
    if model.kind is not ModelKind.NAIVE_BAYES or not isinstance(model.params, NaiveBayesParams):
        msg = f"Posterior probabilities are only available for Naive Bayes, not {model.kind.value}"
        raise TypeError(msg)
    learner = learners.get(model.kind)
    if not isinstance(learner, NaiveBayesLearner):
        msg = f"Learner {learner!r} cannot compute posteriors"
        raise TypeError(msg)
    return learner.predict_proba(model.params, _as_matrix(model, impute(vectors, model.imputation)))
