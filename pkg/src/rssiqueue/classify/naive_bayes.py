"""Gaussian likelihoods for continuous features, Bernoulli likelihoods for binary ones."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from rssiqueue.classify.base import Learner, ModelKind, NaiveBayesParams
from rssiqueue.classify.dataset import BINARY_COLUMNS, CONTINUOUS_COLUMNS

if TYPE_CHECKING:
    from rssiqueue.classify.base import ModelParams, ModelSpec

_CLASSES = (0, 1)


def _as_pair(rows: list[np.ndarray]) -> tuple[tuple[float, ...], tuple[float, ...]]:
    return tuple(float(v) for v in rows[0]), tuple(float(v) for v in rows[1])


class NaiveBayesLearner(Learner):
    kind = ModelKind.NAIVE_BAYES

    def fit(self, features: np.ndarray, labels: np.ndarray, spec: ModelSpec) -> NaiveBayesParams:
        continuous = features[:, CONTINUOUS_COLUMNS]
        binary = features[:, BINARY_COLUMNS] >= 0.5
        epsilon = spec.var_smoothing * max(float(np.var(continuous, axis=0).max(initial=0.0)), 1.0)
        log_priors, means, variances, rates = [], [], [], []
        for cls in _CLASSES:
            mask = labels == cls
            count = int(mask.sum())
            log_priors.append(float(np.log(count / len(labels))))
            means.append(continuous[mask].mean(axis=0))
            variances.append(continuous[mask].var(axis=0) + epsilon)
            rates.append((binary[mask].sum(axis=0) + 1) / (count + 2))
        return NaiveBayesParams(
            log_priors=(log_priors[0], log_priors[1]),
            continuous=CONTINUOUS_COLUMNS,
            means=_as_pair(means),
            variances=_as_pair(variances),
            binary=BINARY_COLUMNS,
            rates=_as_pair(rates),
        )

    def joint_log_likelihood(self, params: NaiveBayesParams, features: np.ndarray) -> np.ndarray:
        """``(n, 2)`` matrix of log P(class) + log P(x | class)."""
        continuous = features[:, params.continuous]
        binary = features[:, params.binary] >= 0.5
        columns = []
        for cls in _CLASSES:
            mean = np.asarray(params.means[cls])
            variance = np.asarray(params.variances[cls])
            rate = np.asarray(params.rates[cls])
            gaussian = -0.5 * (np.log(2 * np.pi * variance) + (continuous - mean) ** 2 / variance)
            bernoulli = np.where(binary, np.log(rate), np.log1p(-rate))
            columns.append(params.log_priors[cls] + gaussian.sum(axis=1) + bernoulli.sum(axis=1))
        return np.column_stack(columns)

    def predict_proba(self, params: NaiveBayesParams, features: np.ndarray) -> np.ndarray:
        """Posterior ``(n, 2)``: column 0 not-in-queue, column 1 in-queue. Rows sum to 1."""
        joint = self.joint_log_likelihood(params, features)
        joint -= joint.max(axis=1, keepdims=True)
        posterior = np.exp(joint)
        return posterior / posterior.sum(axis=1, keepdims=True)

    def predict(self, params: ModelParams, features: np.ndarray) -> np.ndarray:
        if not isinstance(params, NaiveBayesParams):
            msg = f"Naive Bayes cannot predict with {type(params).__name__}"
            raise TypeError(msg)
        joint = self.joint_log_likelihood(params, features)
        # equal evidence resolves to not-in-queue
        return (joint[:, 1] > joint[:, 0]).astype(np.int64)
