"""End-to-end queue detection: packets in, a label per (device, window) out."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from rssiqueue.classify import Dataset, predict_many
from rssiqueue.core import LabeledExample, PipelineConfig, seconds_to_ms
from rssiqueue.core.exceptions import DataFileError
from rssiqueue.features import extract_all
from rssiqueue.preprocess import preprocess_trace
from rssiqueue.store import PacketStore

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence

    from rssiqueue.classify import TrainedModel
    from rssiqueue.core import AdvertisingPacket, Deployment, FeatureVector, Label
    from rssiqueue.simulate import GroundTruth

# uncovered pairs listed in a label-gap error
_MAX_LISTED_GAPS = 10


def build_features(
    packets: Iterable[AdvertisingPacket],
    config: Optional[PipelineConfig] = None,
    deployment: Optional[Deployment] = None,
) -> list[FeatureVector]:
    """Preprocess a trace and extract the features of every eligible (device, window)."""
    config = config or PipelineConfig()
    return extract_all(preprocess_trace(packets, config), config, deployment)


def label_features(vectors: Sequence[FeatureVector], labels: Mapping[tuple[str, int], Label]) -> Dataset:
    """Attach ground-truth labels to feature vectors.

    Raises:
        DataFileError: If some (device, window) has no label
    """
    missing = [(vector.device, vector.window) for vector in vectors if (vector.device, vector.window) not in labels]
    if missing:
        listed = ", ".join(f"({device}, {window})" for device, window in missing[:_MAX_LISTED_GAPS])
        more = f" and {len(missing) - _MAX_LISTED_GAPS} more" if len(missing) > _MAX_LISTED_GAPS else ""
        msg = f"No label for {len(missing)} (device, window) pairs: {listed}{more}"
        raise DataFileError(msg)
    return Dataset(
        examples=tuple(
            LabeledExample(features=vector, label=labels[vector.device, vector.window]) for vector in vectors
        )
    )


def build_dataset(
    packets: Iterable[AdvertisingPacket],
    ground_truth: GroundTruth,
    config: Optional[PipelineConfig] = None,
    deployment: Optional[Deployment] = None,
) -> Dataset:
    """Features of a simulated trace labeled from its ground truth."""
    config = config or PipelineConfig()
    store = packets if isinstance(packets, PacketStore) else PacketStore(packets)
    if store.epoch is None:
        return Dataset(examples=())
    labels = ground_truth.window_labels(store.epoch, seconds_to_ms(config.window_duration))
    return label_features(build_features(store, config, deployment), labels)


def detect(
    packets: Iterable[AdvertisingPacket],
    model: TrainedModel,
    config: Optional[PipelineConfig] = None,
    deployment: Optional[Deployment] = None,
) -> dict[tuple[str, int], Label]:
    """Classify every eligible (device, window) of a trace with a trained model."""
    vectors = build_features(packets, config, deployment)
    return {
        (vector.device, vector.window): label for vector, label in zip(vectors, predict_many(model, vectors))
    }
