"""Features of one device seen by one sniffer (f1-f7)."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from msgspec import Struct

from rssiqueue.features.statistics import population_variance

if TYPE_CHECKING:
    from collections.abc import Sequence

    from rssiqueue.core import RssiSample, WindowedStream
    from rssiqueue.features.backtrack import BacktrackContext


class AccumulatedSlope(Struct, frozen=True):
    value: float
    # fewer than two samples in the window
    degenerate: bool


def f1_accumulated_slope(samples: Sequence[RssiSample]) -> AccumulatedSlope:
    """RSSI at the end of the window minus RSSI at its start (``r_j - r_i``)."""
    if len(samples) < 2:  # noqa: PLR2004
        return AccumulatedSlope(value=0.0, degenerate=True)
    return AccumulatedSlope(value=samples[-1].value - samples[0].value, degenerate=False)


def f2_approaching_counter(samples: Sequence[RssiSample], tau_f2: float) -> int:
    slope = f1_accumulated_slope(samples)
    if slope.degenerate:
        return 0
    return int(slope.value > tau_f2)


def f3_near_counter(samples: Sequence[RssiSample], tau_f3: float) -> int:
    """1 iff every sample of the window is strictly above ``tau_f3``; an empty window gives 0."""
    if not samples:
        return 0
    return int(all(sample.value > tau_f3 for sample in samples))


def f4_f5_f6_stability(ctx: BacktrackContext, sniffer: int) -> Optional[float]:
    """Population variance of every sample the sniffer heard from the device over windows k-b..k."""
    return population_variance(ctx.pooled.get(sniffer, ()))


def f7_stay_duration(device: str, stream: Optional[WindowedStream], up_to_window: int) -> float:
    """Seconds between the first packet of the device at the counter and its latest one up to window k.

    Raw packet timestamps are used when the stream recorded them, sample timestamps otherwise.
    """
    if stream is None or stream.device != device:
        return 0.0
    if stream.packet_times:
        heard = [index for index in stream.packet_times if index <= up_to_window]
        if not heard:
            return 0.0
        return (stream.packet_times[max(heard)][1] - stream.packet_times[min(heard)][0]) / 1000
    heard = [index for index in stream.windows if index <= up_to_window]
    if not heard:
        return 0.0
    first = stream.windows[min(heard)][0].t
    latest = stream.windows[max(heard)][-1].t
    return (latest - first) / 1000
