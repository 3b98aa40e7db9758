from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from msgspec import Struct

from rssiqueue.features.statistics import window_representative

if TYPE_CHECKING:
    from collections.abc import Mapping

    from rssiqueue.core import WindowedStream


class BacktrackContext(Struct, frozen=True):
    """Window k of one device together with its b backtracked windows, per sniffer.

    ``sequences[sniffer]`` holds the window means of windows k-b..k, oldest first, ``None`` where the
    sniffer did not hear the device. ``pooled[sniffer]`` holds every sample value of those windows.
    """

    device: str
    window: int
    depth: int
    sequences: dict[int, tuple[Optional[float], ...]]
    pooled: dict[int, tuple[float, ...]]

    def sequence(self, sniffer: int) -> tuple[Optional[float], ...]:
        return self.sequences.get(sniffer, (None,) * (self.depth + 1))

    def has_observations(self) -> bool:
        return any(value is not None for sequence in self.sequences.values() for value in sequence)


def build_backtrack_context(
    device: str,
    window: int,
    depth: int,
    streams: Mapping[int, WindowedStream],
) -> BacktrackContext:
    """Collect windows ``window - depth`` .. ``window`` of a device from its stream at every sniffer.

    Args:
        device: The device id
        window: Current window index k
        depth: Backtracking depth b
        streams: The device's windowed stream per sniffer id

    Returns:
        The :class:`BacktrackContext`; sniffers absent from ``streams`` yield all-missing sequences
    """
    if depth < 1:
        msg = f"Backtracking depth must be at least 1, got {depth}"
        raise ValueError(msg)
    indices = range(window - depth, window + 1)
    sequences: dict[int, tuple[Optional[float], ...]] = {}
    pooled: dict[int, tuple[float, ...]] = {}
    for sniffer, stream in streams.items():
        sequences[sniffer] = tuple(window_representative(stream.samples(index)) for index in indices)
        pooled[sniffer] = tuple(sample.value for index in indices for sample in stream.samples(index))
    return BacktrackContext(device=device, window=window, depth=depth, sequences=sequences, pooled=pooled)
