from __future__ import annotations

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from collections.abc import Iterable

    from rssiqueue.core import AdvertisingPacket

__all__ = ("PacketStore",)

StreamKey = tuple[int, str]


class PacketStore:
    """In memory store of sniffed packets grouped by (sniffer, device).

    Packets may arrive in any order across sniffers; each stream is returned sorted by timestamp.
    """

    __slots__ = ("_streams", "_epoch", "_count")

    def __init__(self, packets: Iterable[AdvertisingPacket] = ()) -> None:
        """Initialize :class:`PacketStore`"""
        self._streams: dict[StreamKey, list[AdvertisingPacket]] = {}
        self._epoch: Optional[int] = None
        self._count = 0
        self.extend(packets)

    def add(self, packet: AdvertisingPacket) -> None:
        """Add one packet.

        Args:
            packet: The sniffed advertisement
        """
        self._streams.setdefault((packet.sniffer, packet.device), []).append(packet)
        if self._epoch is None or packet.t < self._epoch:
            self._epoch = packet.t
        self._count += 1

    def extend(self, packets: Iterable[AdvertisingPacket]) -> None:
        for packet in packets:
            self.add(packet)

    @property
    def epoch(self) -> Optional[int]:
        """Earliest timestamp over the whole trace, ``None`` while the store is empty."""
        return self._epoch

    def streams(self) -> list[tuple[StreamKey, list[AdvertisingPacket]]]:
        """Return every (sniffer, device) stream, keys sorted, packets sorted by timestamp (stable)."""
        return [(key, sorted(self._streams[key], key=lambda packet: packet.t)) for key in sorted(self._streams)]

    def devices(self) -> list[str]:
        return sorted({device for _, device in self._streams})

    def sniffers(self) -> list[int]:
        return sorted({sniffer for sniffer, _ in self._streams})

    def __len__(self) -> int:
        return self._count
