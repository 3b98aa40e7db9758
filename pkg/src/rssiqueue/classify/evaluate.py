from __future__ import annotations

from typing import TYPE_CHECKING, Literal, Optional

import numpy as np
from msgspec import Struct
from pydantic import Field

from rssiqueue.classify.base import ModelSpec
from rssiqueue.classify.dataset import impute
from rssiqueue.classify.model import predict_matrix, train
from rssiqueue.core import ConfigModel, Label
from rssiqueue.core.exceptions import EvaluationError
from rssiqueue.core.logging import get_logger

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from rssiqueue.classify.dataset import Dataset

logger = get_logger(__name__)

CLASS_ORDER: tuple[Label, Label] = (Label.IN_QUEUE, Label.NOT_IN_QUEUE)


class EvalProtocol(ConfigModel):
    """How examples are split for evaluation. Splits are always grouped by device."""

    kind: Literal["kfold", "split"] = "kfold"
    folds: int = Field(default=5, ge=2)
    test_fraction: float = Field(default=0.2, gt=0, lt=1)


class EvalReport(Struct, frozen=True):
    """Metrics of one evaluation.

    ``confusion[i][j]`` counts examples of actual class ``i`` predicted as class ``j``, classes in the
    order in-queue, not-in-queue.
    """

    classifier: str
    examples: int
    accuracy: float
    precision: dict[str, float]
    recall: dict[str, float]
    confusion: list[list[int]]
    axis: Optional[str] = None
    value: Optional[str] = None

    @classmethod
    def from_predictions(
        cls,
        actual: Sequence[int] | np.ndarray,
        predicted: Sequence[int] | np.ndarray,
        classifier: str = "",
        *,
        axis: Optional[str] = None,
        value: Optional[str] = None,
    ) -> EvalReport:
        actual = np.asarray(actual, dtype=np.int64)
        predicted = np.asarray(predicted, dtype=np.int64)
        if actual.shape != predicted.shape:
            msg = f"Got {len(actual)} actual labels but {len(predicted)} predictions"
            raise EvaluationError(msg)
        confusion = [
            [int(np.sum((actual == row.as_int) & (predicted == col.as_int))) for col in CLASS_ORDER]
            for row in CLASS_ORDER
        ]
        return cls.from_confusion(confusion, classifier, axis=axis, value=value)

    @classmethod
    def from_confusion(
        cls,
        confusion: Sequence[Sequence[int]],
        classifier: str = "",
        *,
        axis: Optional[str] = None,
        value: Optional[str] = None,
    ) -> EvalReport:
        confusion = [[int(count) for count in row] for row in confusion]
        precision: dict[str, float] = {}
        recall: dict[str, float] = {}
        for i, label in enumerate(CLASS_ORDER):
            hits = confusion[i][i]
            predicted_as = confusion[0][i] + confusion[1][i]
            actual_as = sum(confusion[i])
            # undefined ratios read as 0
            precision[label.value] = hits / predicted_as if predicted_as else 0.0
            recall[label.value] = hits / actual_as if actual_as else 0.0
        total = sum(map(sum, confusion))
        return cls(
            classifier=classifier,
            examples=total,
            accuracy=(confusion[0][0] + confusion[1][1]) / total if total else 0.0,
            precision=precision,
            recall=recall,
            confusion=confusion,
            axis=axis,
            value=value,
        )


def _unique_devices(devices: Iterable[str]) -> list[str]:
    return sorted(set(devices))


def device_folds(devices: Iterable[str], k: int, seed: int) -> list[list[str]]:
    """Partition devices into ``k`` folds of near-equal size after a seeded shuffle.

    Raises:
        EvaluationError: If ``k`` is below 2 or exceeds the number of devices
    """
    unique = _unique_devices(devices)
    if k < 2:  # noqa: PLR2004
        msg = f"Cross-validation needs at least 2 folds, got {k}"
        raise EvaluationError(msg)
    if k > len(unique):
        msg = f"Cannot split {len(unique)} devices into {k} folds"
        raise EvaluationError(msg)
    order = np.random.default_rng(seed).permutation(len(unique))
    return [sorted(unique[i] for i in fold) for fold in np.array_split(order, k)]


def train_test_split_devices(devices: Iterable[str], test_fraction: float, seed: int) -> tuple[list[str], list[str]]:
    """Split devices into (train, test), with at least one device on each side.

    Raises:
        EvaluationError: If there are fewer than two devices or the fraction is outside (0, 1)
    """
    unique = _unique_devices(devices)
    if not 0 < test_fraction < 1:
        msg = f"Test fraction must lie in (0, 1), got {test_fraction!r}"
        raise EvaluationError(msg)
    if len(unique) < 2:  # noqa: PLR2004
        msg = f"A train/test split needs at least 2 devices, got {len(unique)}"
        raise EvaluationError(msg)
    order = np.random.default_rng(seed).permutation(len(unique))
    n_test = min(max(1, round(test_fraction * len(unique))), len(unique) - 1)
    test = sorted(unique[i] for i in order[:n_test])
    train_devices = sorted(unique[i] for i in order[n_test:])
    return train_devices, test


def _splits(dataset: Dataset, protocol: EvalProtocol, seed: int) -> list[list[str]]:
    """Test-device groups; every group is evaluated against a model trained on the other devices."""
    if protocol.kind == "kfold":
        return device_folds(dataset.devices, protocol.folds, seed)
    return [train_test_split_devices(dataset.devices, protocol.test_fraction, seed)[1]]


def _predict_fold(training: Dataset, testing: Dataset, spec: ModelSpec) -> list[int]:
    """Predictions for a held-out fold; a training split with one class predicts that class."""
    counts = training.class_counts()
    present = [label for label in CLASS_ORDER if counts[label.value]]
    if len(present) == 1:
        logger.warning("training fold holds a single class", label=present[0].value, examples=len(training))
        return [present[0].as_int] * len(testing)
    model = train(training, spec)
    return [int(label) for label in predict_matrix(model, impute(testing.vectors, model.imputation))]


def evaluate(
    dataset: Dataset,
    spec: Optional[ModelSpec] = None,
    protocol: Optional[EvalProtocol] = None,
    seed: int = 0,
    *,
    axis: Optional[str] = None,
    value: Optional[str] = None,
) -> EvalReport:
    """Train and test with device-grouped folds and pool the predictions over all folds.

    Args:
        dataset: Labeled feature vectors
        spec: Classifier to evaluate, a default random forest if omitted
        protocol: k-fold (default 5 folds) or a single train/test split
        seed: Seed of the device shuffle
        axis: Sweep parameter name recorded in the report
        value: Sweep parameter value recorded in the report

    Returns:
        Metrics over every test prediction

    Raises:
        EvaluationError: If the devices cannot be split as requested
    """
    spec = spec or ModelSpec()
    protocol = protocol or EvalProtocol()
    actual: list[int] = []
    predicted: list[int] = []
    for test_devices in _splits(dataset, protocol, seed):
        held_out = set(test_devices)
        training = dataset.subset(device for device in dataset.devices if device not in held_out)
        testing = dataset.subset(held_out)
        actual.extend(int(label) for label in testing.labels)
        predicted.extend(_predict_fold(training, testing, spec))
    report = EvalReport.from_predictions(actual, predicted, spec.kind.value, axis=axis, value=value)
    logger.debug("evaluation finished", classifier=spec.kind.value, examples=report.examples, accuracy=report.accuracy)
    return report
