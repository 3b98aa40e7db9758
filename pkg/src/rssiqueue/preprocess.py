"""Aggregation and dynamic exponential smoothing of raw RSSI streams."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

import numpy as np
from msgspec import Struct

from rssiqueue.core import RssiSample, WindowedStream, partition_into_windows, seconds_to_ms
from rssiqueue.core.exceptions import MixedStreamError, OrderingError
from rssiqueue.core.logging import get_logger
from rssiqueue.store import PacketStore

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from rssiqueue.core import AdvertisingPacket, PipelineConfig

logger = get_logger(__name__)


class AggregationBucket(Struct, frozen=True):
    start: int
    mean_rssi: float
    count: int


def aggregate_buckets(
    packets: Sequence[AdvertisingPacket], aggregation_period: float, epoch: int = 0
) -> list[AggregationBucket]:
    """Group the packets of one (sniffer, device) into fixed-length buckets on the epoch grid.

    Args:
        packets: Packets of a single sniffer and device, sorted by timestamp
        aggregation_period: Bucket length in seconds
        epoch: Timestamp (ms) of the grid origin

    Returns:
        One bucket per non-empty bucket, in time order

    Raises:
        MixedStreamError: If the packets come from several sniffers or devices
        OrderingError: If the packets are not sorted
    """
    if not packets:
        return []
    period_ms = seconds_to_ms(aggregation_period)
    if period_ms <= 0:
        msg = f"Aggregation period must be positive, got {aggregation_period!r} s"
        raise ValueError(msg)
    first = packets[0]
    grouped: dict[int, list[int]] = {}
    previous_t = first.t
    for packet in packets:
        if packet.sniffer != first.sniffer or packet.device != first.device:
            msg = (
                f"Cannot aggregate packets of ({packet.sniffer}, {packet.device!r}) "
                f"together with ({first.sniffer}, {first.device!r})"
            )
            raise MixedStreamError(msg)
        if packet.t < previous_t:
            msg = f"Packets are not sorted: {packet.t} ms follows {previous_t} ms"
            raise OrderingError(msg)
        previous_t = packet.t
        grouped.setdefault((packet.t - epoch) // period_ms, []).append(packet.rssi)
    return [
        AggregationBucket(start=epoch + index * period_ms, mean_rssi=float(np.mean(values)), count=len(values))
        for index, values in grouped.items()
    ]


def aggregate(
    packets: Sequence[AdvertisingPacket], aggregation_period: float, epoch: int = 0
) -> list[RssiSample]:
    """Mean RSSI of every non-empty bucket, stamped with the bucket start."""
    return [
        RssiSample(t=bucket.start, value=bucket.mean_rssi)
        for bucket in aggregate_buckets(packets, aggregation_period, epoch)
    ]


def desf(samples: Sequence[RssiSample], alpha: float) -> list[RssiSample]:
    """Dynamic exponential smoothing filter.

    ``out = alpha * prev + (1 - alpha) * value`` when the input drops below the previous output,
    ``out = (1 - alpha) * prev + alpha * value`` otherwise. The first output is the first input.
    """
    if not 0 <= alpha <= 1:
        msg = f"Smoothing weight must lie in [0, 1], got {alpha!r}"
        raise ValueError(msg)
    filtered: list[RssiSample] = []
    previous: Optional[float] = None
    for sample in samples:
        value = sample.value
        if previous is None or value == previous:
            output = value if previous is None else previous
        elif value < previous:
            output = alpha * previous + (1 - alpha) * value
        else:
            output = (1 - alpha) * previous + alpha * value
        filtered.append(RssiSample(t=sample.t, value=output))
        previous = output
    return filtered


def preprocess_trace(packets: Iterable[AdvertisingPacket], config: PipelineConfig) -> list[WindowedStream]:
    """Aggregate, smooth and window every (sniffer, device) stream of a trace.

    All streams share one epoch (the earliest timestamp of the trace) so window indices align
    across sniffers and devices. The result is sorted by (sniffer, device).
    """
    store = packets if isinstance(packets, PacketStore) else PacketStore(packets)
    epoch = store.epoch
    if epoch is None:
        return []
    streams: list[WindowedStream] = []
    for (sniffer, device), stream_packets in store.streams():
        samples = desf(aggregate(stream_packets, config.aggregation_period, epoch), config.alpha)
        streams.append(
            partition_into_windows(
                samples,
                config.window_duration,
                epoch,
                sniffer=sniffer,
                device=device,
                packet_times=(packet.t for packet in stream_packets),
            )
        )
    logger.debug("trace preprocessed", packets=len(store), streams=len(streams), epoch_ms=epoch)
    return streams
