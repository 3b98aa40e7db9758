from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from rssiqueue.core._base import RssiSample, WindowedStream
from rssiqueue.core.exceptions import OrderingError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence


def seconds_to_ms(seconds: float) -> int:
    return round(seconds * 1000)


def window_index(t: int, epoch: int, window_ms: int) -> int:
    """Index of the half-open window containing ``t``: a sample at exactly t_j belongs to window k+1."""
    return (t - epoch) // window_ms


def _packet_bounds(times: Iterable[int], epoch: int, window_ms: int) -> dict[int, tuple[int, int]]:
    bounds: dict[int, tuple[int, int]] = {}
    for t in times:
        index = window_index(t, epoch, window_ms)
        first, last = bounds.get(index, (t, t))
        bounds[index] = (min(first, t), max(last, t))
    return bounds


def partition_into_windows(
    samples: Sequence[RssiSample],
    window_duration: float,
    epoch: int,
    *,
    sniffer: int,
    device: str,
    packet_times: Optional[Iterable[int]] = None,
) -> WindowedStream:
    """Partition time-ordered samples into contiguous windows of ``window_duration`` seconds.

    Args:
        samples: Samples sorted by timestamp
        window_duration: Window size in seconds
        epoch: Timestamp (ms) where window 0 starts
        sniffer: Sniffer id of the stream
        device: Device id of the stream
        packet_times: Timestamps of the raw packets behind the samples, recorded per window when given

    Returns:
        A :class:`WindowedStream` where every sample sits in window ``floor((t - epoch) / duration)``

    Raises:
        OrderingError: If the samples are not sorted by timestamp
        ValueError: If the duration is not positive or a sample precedes the epoch
    """
    window_ms = seconds_to_ms(window_duration)
    if window_ms <= 0:
        msg = f"Window duration must be positive, got {window_duration!r} s"
        raise ValueError(msg)
    windows: dict[int, list[RssiSample]] = {}
    previous_t: int | None = None
    for sample in samples:
        if previous_t is not None and sample.t < previous_t:
            msg = f"Samples of ({sniffer}, {device!r}) are not sorted: {sample.t} ms follows {previous_t} ms"
            raise OrderingError(msg)
        if sample.t < epoch:
            msg = f"Sample at {sample.t} ms precedes the epoch {epoch} ms"
            raise ValueError(msg)
        previous_t = sample.t
        windows.setdefault(window_index(sample.t, epoch, window_ms), []).append(sample)
    return WindowedStream(
        sniffer=sniffer,
        device=device,
        epoch=epoch,
        window_ms=window_ms,
        windows={index: tuple(bucket) for index, bucket in windows.items()},
        packet_times=_packet_bounds(packet_times, epoch, window_ms) if packet_times is not None else {},
    )
