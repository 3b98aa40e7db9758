from __future__ import annotations

from collections import defaultdict
from typing import TYPE_CHECKING, Optional

from msgspec import structs

from rssiqueue.core import Deployment, FeatureVector, WindowedStream
from rssiqueue.core.logging import get_logger
from rssiqueue.features.backtrack import BacktrackContext, build_backtrack_context
from rssiqueue.features.cross_device import f8_mobility_similarity, stability_table
from rssiqueue.features.cross_sniffer import f9_mobility_correlation
from rssiqueue.features.single_device import (
    f1_accumulated_slope,
    f2_approaching_counter,
    f3_near_counter,
    f4_f5_f6_stability,
    f7_stay_duration,
)

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from rssiqueue.core import PipelineConfig

logger = get_logger(__name__)

FEATURE_GROUPS: dict[str, tuple[str, ...]] = {
    "single_device": ("f1", "f2", "f3", "f4", "f5", "f6", "f7"),
    "cross_device": ("f8",),
    "cross_sniffer": ("f9",),
}
# features that need a flanking sniffer
FLANK_FEATURES: tuple[str, ...] = ("f5", "f6", "f9")
# value of a feature whose inputs are unavailable; f1 and f7 are never missing, so they read as 0
UNAVAILABLE: dict[str, Optional[float]] = {
    "f1": 0.0,
    "f2": 0,
    "f3": 0,
    "f4": None,
    "f5": None,
    "f6": None,
    "f7": 0.0,
    "f8": 0,
    "f9": None,
}


def _streams_by_device(streams: Iterable[WindowedStream]) -> dict[str, dict[int, WindowedStream]]:
    by_device: dict[str, dict[int, WindowedStream]] = defaultdict(dict)
    for stream in streams:
        by_device[stream.device][stream.sniffer] = stream
    return dict(by_device)


def extract_all(
    streams: Iterable[WindowedStream],
    config: PipelineConfig,
    deployment: Optional[Deployment] = None,
) -> list[FeatureVector]:
    """Compute the nine features for every device at every window with full backtracking history.

    Windows k < b are skipped. A device is evaluated at window k only if some sniffer heard it
    within k-b..k. The result is sorted by (window, device).

    Args:
        streams: Preprocessed streams sharing one epoch
        config: Pipeline parameters
        deployment: Sniffer roles, the default deployment if omitted

    Returns:
        The feature vectors
    """
    deployment = deployment or Deployment.default()
    by_device = _streams_by_device(streams)
    last = max((stream.last_index for per in by_device.values() for stream in per.values()), default=None)
    if last is None:
        return []
    depth = config.backtracking
    counter, left, right = deployment.counter, deployment.left, deployment.right
    vectors: list[FeatureVector] = []
    for window in range(depth, last + 1):
        contexts: dict[str, BacktrackContext] = {}
        for device in sorted(by_device):
            ctx = build_backtrack_context(device, window, depth, by_device[device])
            if ctx.has_observations():
                contexts[device] = ctx
        stability = stability_table(contexts, counter)
        for device, ctx in contexts.items():
            counter_stream = by_device[device].get(counter)
            current = counter_stream.samples(window) if counter_stream else ()
            vectors.append(
                FeatureVector(
                    device=device,
                    window=window,
                    f1=f1_accumulated_slope(current).value,
                    f2=f2_approaching_counter(current, config.tau_f2),
                    f3=f3_near_counter(current, config.tau_f3),
                    f4=stability[device],
                    f5=f4_f5_f6_stability(ctx, left) if left is not None else None,
                    f6=f4_f5_f6_stability(ctx, right) if right is not None else None,
                    f7=f7_stay_duration(device, counter_stream, window),
                    f8=f8_mobility_similarity(
                        device,
                        contexts,
                        counter,
                        config.peer_count,
                        config.tau_f8,
                        min_paired=config.min_paired_windows,
                        stability=stability,
                    ),
                    f9=f9_mobility_correlation(ctx, left, right, config.min_paired_windows),
                )
            )
    logger.debug("features extracted", vectors=len(vectors), devices=len(by_device), windows=last + 1)
    return vectors


def mask_features(vectors: Sequence[FeatureVector], names: Iterable[str]) -> list[FeatureVector]:
    """Mark the named features as unavailable: binary ones become 0, the others missing."""
    changes = {name: UNAVAILABLE[name] for name in names}
    if not changes:
        return list(vectors)
    return [structs.replace(vector, **changes) for vector in vectors]


def mask_feature_groups(vectors: Sequence[FeatureVector], groups: Iterable[str]) -> list[FeatureVector]:
    """Keep only the features of the given groups (``single_device``, ``cross_device``, ``cross_sniffer``)."""
    groups = set(groups)
    unknown = groups - set(FEATURE_GROUPS)
    if unknown:
        msg = f"Unknown feature groups {sorted(unknown)}, expected some of {sorted(FEATURE_GROUPS)}"
        raise ValueError(msg)
    dropped = [name for group, names in FEATURE_GROUPS.items() if group not in groups for name in names]
    return mask_features(vectors, dropped)


def restrict_to_counter(vectors: Sequence[FeatureVector]) -> list[FeatureVector]:
    """The single-sniffer view: features that need a flanking sniffer become missing."""
    return mask_features(vectors, FLANK_FEATURES)
