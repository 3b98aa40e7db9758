from __future__ import annotations

import enum
from typing import Optional

import msgspec
from msgspec import Struct

FEATURE_NAMES: tuple[str, ...] = ("f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8", "f9")
BINARY_FEATURES: frozenset[str] = frozenset({"f2", "f3", "f8"})
# slack for floating-point correlation bounds
CORRELATION_EPSILON = 1e-9


class SnifferRole(str, enum.Enum):
    COUNTER = "counter"
    LEFT = "left"
    RIGHT = "right"


class Label(str, enum.Enum):
    IN_QUEUE = "in-queue"
    NOT_IN_QUEUE = "not-in-queue"

    @property
    def as_int(self) -> int:
        return 1 if self is Label.IN_QUEUE else 0

    @classmethod
    def from_int(cls, value: int) -> Label:
        return cls.IN_QUEUE if value == 1 else cls.NOT_IN_QUEUE


class SnifferId(Struct, frozen=True):
    id: int
    role: SnifferRole


class Deployment(Struct, frozen=True):
    """The sniffers of one deployment: one counter sniffer and the two flanking sniffers."""

    sniffers: tuple[SnifferId, ...]

    def __post_init__(self) -> None:
        ids = [sniffer.id for sniffer in self.sniffers]
        if len(set(ids)) != len(ids):
            msg = f"Sniffer ids must be unique, got {ids}"
            raise ValueError(msg)
        counters = [sniffer for sniffer in self.sniffers if sniffer.role is SnifferRole.COUNTER]
        if len(counters) != 1:
            msg = f"Exactly one sniffer must have the counter role, got {len(counters)}"
            raise ValueError(msg)

    @classmethod
    def default(cls) -> Deployment:
        return cls(
            sniffers=(
                SnifferId(1, SnifferRole.COUNTER),
                SnifferId(2, SnifferRole.LEFT),
                SnifferId(3, SnifferRole.RIGHT),
            )
        )

    def role_of(self, sniffer_id: int) -> Optional[SnifferRole]:
        for sniffer in self.sniffers:
            if sniffer.id == sniffer_id:
                return sniffer.role
        return None

    def _by_role(self, role: SnifferRole) -> Optional[int]:
        for sniffer in self.sniffers:
            if sniffer.role is role:
                return sniffer.id
        return None

    @property
    def counter(self) -> int:
        return self._by_role(SnifferRole.COUNTER)  # type: ignore  # validated in __post_init__

    @property
    def left(self) -> Optional[int]:
        return self._by_role(SnifferRole.LEFT)

    @property
    def right(self) -> Optional[int]:
        return self._by_role(SnifferRole.RIGHT)


class AdvertisingPacket(Struct, frozen=True):
    """One sniffed BLE advertisement."""

    t: int
    sniffer: int
    device: str
    rssi: int

    def __post_init__(self) -> None:
        if self.t < 0:
            msg = f"Packet timestamp must be non-negative, got {self.t}"
            raise ValueError(msg)
        if self.rssi > 0:
            msg = f"Packet RSSI must be <= 0 dBm, got {self.rssi}"
            raise ValueError(msg)
        if not self.device:
            msg = "Packet device id must be non-empty"
            raise ValueError(msg)


class TimeWindow(Struct, frozen=True):
    """Window ``index`` covering [start, end) in milliseconds."""

    index: int
    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start >= self.end:
            msg = f"Window start must precede its end, got [{self.start}, {self.end})"
            raise ValueError(msg)

    @property
    def duration(self) -> int:
        return self.end - self.start

    def __contains__(self, t: int) -> bool:
        return self.start <= t < self.end


class RssiSample(Struct, frozen=True):
    t: int
    value: float


class WindowedStream(Struct, frozen=True):
    """Preprocessed samples of one (sniffer, device) pair keyed by window index.

    Windows without samples are absent from ``windows``. ``packet_times`` holds, per window, the
    timestamps of the first and the last raw packet that fell into it; it stays empty for streams
    partitioned from samples alone.
    """

    sniffer: int
    device: str
    epoch: int
    window_ms: int
    windows: dict[int, tuple[RssiSample, ...]] = msgspec.field(default_factory=dict)
    packet_times: dict[int, tuple[int, int]] = msgspec.field(default_factory=dict)

    def samples(self, index: int) -> tuple[RssiSample, ...]:
        return self.windows.get(index, ())

    def time_window(self, index: int) -> TimeWindow:
        start = self.epoch + index * self.window_ms
        return TimeWindow(index=index, start=start, end=start + self.window_ms)

    @property
    def last_index(self) -> Optional[int]:
        return max(self.windows) if self.windows else None

    def flatten(self) -> list[RssiSample]:
        return [sample for index in sorted(self.windows) for sample in self.windows[index]]


class FeatureVector(Struct, frozen=True):
    """The nine features of one device at window ``window``. ``None`` marks a missing value."""

    device: str
    window: int
    f1: float
    f2: int
    f3: int
    f4: Optional[float]
    f5: Optional[float]
    f6: Optional[float]
    f7: float
    f8: int
    f9: Optional[float]

    def __post_init__(self) -> None:
        for name in BINARY_FEATURES:
            if getattr(self, name) not in (0, 1):
                msg = f"Feature {name} must be 0 or 1, got {getattr(self, name)!r}"
                raise ValueError(msg)
        for name in ("f4", "f5", "f6"):
            value = getattr(self, name)
            if value is not None and value < 0:
                msg = f"Variance feature {name} must be non-negative, got {value!r}"
                raise ValueError(msg)
        if self.f9 is not None and abs(self.f9) > 1 + CORRELATION_EPSILON:
            msg = f"Correlation feature f9 must lie in [-1, 1], got {self.f9!r}"
            raise ValueError(msg)

    def values(self) -> tuple[Optional[float], ...]:
        return tuple(getattr(self, name) for name in FEATURE_NAMES)


class LabeledExample(Struct, frozen=True):
    features: FeatureVector
    label: Label
