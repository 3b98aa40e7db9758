"""Mobility similarity between devices observed by the counter sniffer (f8)."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Optional

from rssiqueue.features.single_device import f4_f5_f6_stability
from rssiqueue.features.statistics import pearson

if TYPE_CHECKING:
    from collections.abc import Mapping

    from rssiqueue.features.backtrack import BacktrackContext


def stability_table(contexts: Mapping[str, BacktrackContext], counter: int) -> dict[str, Optional[float]]:
    """f4 of every device at one window index; built once and shared by every f8 evaluation of that window."""
    return {device: f4_f5_f6_stability(ctx, counter) for device, ctx in contexts.items()}


def sorted_peers(target: str, stability: Mapping[str, Optional[float]]) -> list[str]:
    """Other devices, most stable (smallest f4) first; devices without f4 come last, ties by id."""

    def key(device: str) -> tuple[float, str]:
        variance = stability[device]
        return (math.inf if variance is None else variance, device)

    return sorted((device for device in stability if device != target), key=key)


def f8_mobility_similarity(
    target: str,
    contexts: Mapping[str, BacktrackContext],
    counter: int,
    peer_count: int,
    tau_f8: float,
    *,
    min_paired: int = 3,
    stability: Optional[Mapping[str, Optional[float]]] = None,
) -> int:
    """1 as soon as ``peer_count`` other devices correlate with the target above ``tau_f8``.

    Peers are scanned in ascending order of their RSSI variance at the counter and the scan stops
    at the ``peer_count``-th match.

    Args:
        target: Device to evaluate
        contexts: Backtrack context of every device at the current window
        counter: Sniffer id of the counter sniffer
        peer_count: m
        tau_f8: Correlation threshold (strict)
        min_paired: Minimum number of windows where both devices were heard
        stability: Precomputed :func:`stability_table`, computed here if omitted

    Returns:
        0 or 1
    """
    target_ctx = contexts.get(target)
    if target_ctx is None:
        return 0
    target_sequence = target_ctx.sequence(counter)
    if all(value is None for value in target_sequence):
        return 0
    if stability is None:
        stability = stability_table(contexts, counter)
    matches = 0
    for peer in sorted_peers(target, stability):
        similarity = pearson(target_sequence, contexts[peer].sequence(counter), min_paired)
        if similarity is not None and similarity > tau_f8:
            matches += 1
            if matches >= peer_count:
                return 1
    return 0
