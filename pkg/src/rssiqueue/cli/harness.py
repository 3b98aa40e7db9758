"""Parameter sweeps over simulated scenarios, evaluated in a pool of worker threads."""

from __future__ import annotations

from functools import partial
from typing import TYPE_CHECKING, Callable, TypeVar

import anyio
import anyio.to_thread
import numpy as np
from msgspec import Struct

from rssiqueue.classify import Dataset, EvalReport, ModelKind, evaluate
from rssiqueue.cli.config import PIPELINE_AXES
from rssiqueue.core import LabeledExample, PipelineConfig
from rssiqueue.core.exceptions import EvaluationError, RssiQueueError
from rssiqueue.core.logging import get_logger
from rssiqueue.features import mask_feature_groups, mask_features
from rssiqueue.pipeline import build_dataset
from rssiqueue.simulate import simulate
from rssiqueue.utils.datastructures import deep_update

if TYPE_CHECKING:
    from collections.abc import Sequence

    from rssiqueue.cli.config import AxisValue, RunConfig
    from rssiqueue.core import FeatureVector
    from rssiqueue.simulate import ScenarioSpec

logger = get_logger(__name__)

_T_point = TypeVar("_T_point")
_T_result = TypeVar("_T_result")

# features that cannot be computed with the first n sniffers of the deployment
SNIFFER_COUNT_MASKS: dict[int, tuple[str, ...]] = {1: ("f5", "f6", "f9"), 2: ("f6", "f9"), 3: ()}
# windows past the backtracking horizon every seed must leave for evaluation
MIN_EVALUATED_WINDOWS = 5


class SweepPoint(Struct, frozen=True):
    axis: str
    value: AxisValue
    classifiers: tuple[ModelKind, ...]

    @property
    def label(self) -> str:
        return str(self.value)


class SweepRow(Struct, frozen=True):
    """Metrics of one classifier at one sweep point, averaged over the scenario seeds.

    Precision, recall and the confusion counts are pooled over every seed.
    """

    axis: str
    value: str
    classifier: str
    seeds: int
    examples: int
    accuracy_mean: float
    accuracy_std: float
    precision_in_queue: float
    recall_in_queue: float
    precision_not_in_queue: float
    recall_not_in_queue: float
    true_in_queue: int
    missed_in_queue: int
    false_in_queue: int
    true_not_in_queue: int
    status: str = "ok"

    @classmethod
    def summarize(cls, point: SweepPoint, kind: ModelKind, reports: Sequence[EvalReport]) -> SweepRow:
        pooled = EvalReport.from_confusion(
            np.sum([report.confusion for report in reports], axis=0).tolist(), kind.value
        )
        accuracies = [report.accuracy for report in reports]
        return cls(
            axis=point.axis,
            value=point.label,
            classifier=kind.value,
            seeds=len(reports),
            examples=pooled.examples,
            accuracy_mean=float(np.mean(accuracies)),
            accuracy_std=float(np.std(accuracies)),
            precision_in_queue=pooled.precision["in-queue"],
            recall_in_queue=pooled.recall["in-queue"],
            precision_not_in_queue=pooled.precision["not-in-queue"],
            recall_not_in_queue=pooled.recall["not-in-queue"],
            true_in_queue=pooled.confusion[0][0],
            missed_in_queue=pooled.confusion[0][1],
            false_in_queue=pooled.confusion[1][0],
            true_not_in_queue=pooled.confusion[1][1],
        )

    @classmethod
    def failed(cls, point: SweepPoint, kind: ModelKind, seeds: int, reason: str) -> SweepRow:
        nan = float("nan")
        return cls(
            axis=point.axis,
            value=point.label,
            classifier=kind.value,
            seeds=seeds,
            examples=0,
            accuracy_mean=nan,
            accuracy_std=nan,
            precision_in_queue=nan,
            recall_in_queue=nan,
            precision_not_in_queue=nan,
            recall_not_in_queue=nan,
            true_in_queue=0,
            missed_in_queue=0,
            false_in_queue=0,
            true_not_in_queue=0,
            status=reason,
        )


def sweep_points(config: RunConfig) -> list[SweepPoint]:
    """Every (axis, value) of the configured sweeps, in config order; other parameters stay at their values."""
    points: list[SweepPoint] = []
    for axis in config.evaluation.sweeps:
        for value in axis.values:
            if axis.name == "classifier":
                classifiers: tuple[ModelKind, ...] = (ModelKind(value),)
            else:
                classifiers = config.evaluation.classifiers
            points.append(SweepPoint(axis=axis.name, value=value, classifiers=classifiers))
    return points


def _relabel(dataset: Dataset, vectors: Sequence[FeatureVector]) -> Dataset:
    return Dataset(
        examples=tuple(
            LabeledExample(features=vector, label=example.label) for vector, example in zip(vectors, dataset.examples)
        )
    )


def _pipeline_for(config: RunConfig, point: SweepPoint) -> PipelineConfig:
    if point.axis not in PIPELINE_AXES:
        return config.pipeline
    values = deep_update(config.pipeline.model_dump(), {PIPELINE_AXES[point.axis]: point.value})
    return PipelineConfig.model_validate(values)


def _scenario_for(config: RunConfig, pipeline: PipelineConfig, offset: int) -> ScenarioSpec:
    """The scenario of one seed, lengthened when it is too short for the pipeline's backtracking horizon."""
    scenario = config.scenario_spec(offset)
    needed = (pipeline.backtracking + 1 + MIN_EVALUATED_WINDOWS) * pipeline.window_duration
    if scenario.duration >= needed:
        return scenario
    if offset == 0:
        logger.info(
            "scenario lengthened",
            duration=scenario.duration,
            lengthened=needed,
            window_duration=pipeline.window_duration,
            backtracking=pipeline.backtracking,
        )
    return scenario.model_copy(update={"duration": needed})


def _datasets_for(config: RunConfig, point: SweepPoint) -> list[Dataset]:
    pipeline = _pipeline_for(config, point)
    sniffer_count = int(point.value) if point.axis == "sniffer_count" else len(config.scenario.sniffers)
    datasets: list[Dataset] = []
    for offset in range(config.evaluation.seeds):
        scenario = _scenario_for(config, pipeline, offset)
        packets, truth = simulate(scenario)
        dataset = build_dataset(packets, truth, pipeline, scenario.deployment())
        masked = mask_features(dataset.vectors, SNIFFER_COUNT_MASKS.get(sniffer_count, ()))
        if point.axis == "feature_groups":
            masked = mask_feature_groups(masked, str(point.value).split("+"))
        datasets.append(_relabel(dataset, masked))
    return datasets


def evaluate_point(config: RunConfig, point: SweepPoint) -> list[SweepRow]:
    """Evaluate every classifier of a sweep point over ``evaluation.seeds`` scenario seeds.

    A point that cannot be evaluated (no eligible windows, too few devices for the folds, an invalid
    pipeline value) yields rows whose status carries the reason.
    """
    seeds = config.evaluation.seeds
    try:
        datasets = _datasets_for(config, point)
    except (RssiQueueError, ValueError) as error:
        logger.warning("sweep point skipped", axis=point.axis, value=point.label, error=str(error))
        return [SweepRow.failed(point, kind, seeds, str(error)) for kind in point.classifiers]
    rows: list[SweepRow] = []
    for kind in point.classifiers:
        spec = config.model_spec(kind)
        try:
            reports = [
                evaluate(
                    dataset,
                    spec,
                    config.evaluation.protocol,
                    config.seed + offset,
                    axis=point.axis,
                    value=point.label,
                )
                for offset, dataset in enumerate(datasets)
            ]
        except EvaluationError as error:
            logger.warning("sweep point failed", axis=point.axis, value=point.label, error=str(error))
            rows.append(SweepRow.failed(point, kind, seeds, str(error)))
            continue
        row = SweepRow.summarize(point, kind, reports)
        logger.info(
            "sweep point evaluated",
            axis=point.axis,
            value=point.label,
            classifier=kind.value,
            accuracy=row.accuracy_mean,
        )
        rows.append(row)
    return rows


async def run_in_workers(
    points: Sequence[_T_point], worker: Callable[[_T_point], _T_result], workers: int
) -> list[_T_result]:
    """Run ``worker`` on every point in at most ``workers`` threads; results keep the order of ``points``."""
    results: list[_T_result] = [None] * len(points)  # type: ignore
    limiter = anyio.CapacityLimiter(workers)

    async def run(index: int, point: _T_point) -> None:
        results[index] = await anyio.to_thread.run_sync(worker, point, limiter=limiter)

    async with anyio.create_task_group() as task_group:
        for index, point in enumerate(points):
            task_group.start_soon(run, index, point)
    return results


def run_sweeps(config: RunConfig) -> list[SweepRow]:
    points = sweep_points(config)
    results = anyio.run(run_in_workers, points, partial(evaluate_point, config), config.evaluation.workers)
    return [row for rows in results for row in rows]
