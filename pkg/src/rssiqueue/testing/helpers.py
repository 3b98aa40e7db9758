"""Builders for packets, samples and streams shared by the test-suite."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

import numpy as np

from rssiqueue.classify import Dataset
from rssiqueue.core import AdvertisingPacket, FeatureVector, Label, LabeledExample, RssiSample, partition_into_windows

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence

    from rssiqueue.core import WindowedStream


def samples(values: Sequence[float], *, start: int = 0, step_ms: int = 1000) -> list[RssiSample]:
    """Samples ``step_ms`` apart starting at ``start``."""
    return [RssiSample(t=start + i * step_ms, value=float(value)) for i, value in enumerate(values)]


def packets(
    rows: Iterable[tuple[int, int, str, int]],
) -> list[AdvertisingPacket]:
    """Packets from ``(t_ms, sniffer, device, rssi)`` rows."""
    return [AdvertisingPacket(t=t, sniffer=sniffer, device=device, rssi=rssi) for t, sniffer, device, rssi in rows]


def windowed_stream(
    windows: Mapping[int, Sequence[float]],
    *,
    sniffer: int = 1,
    device: str = "dev",
    window_ms: int = 60_000,
    epoch: int = 0,
) -> WindowedStream:
    """A stream holding the given values per window index, spread evenly inside each window."""
    ordered: list[RssiSample] = []
    for index in sorted(windows):
        values = windows[index]
        step = window_ms // max(len(values), 1)
        start = epoch + index * window_ms
        ordered.extend(RssiSample(t=start + i * step, value=float(value)) for i, value in enumerate(values))
    return partition_into_windows(ordered, window_ms / 1000, epoch, sniffer=sniffer, device=device)


def random_trace(
    rng: np.random.Generator,
    *,
    max_devices: int = 5,
    max_windows: int = 12,
    window_ms: int = 60_000,
    sniffers: Sequence[int] = (1, 2, 3),
    rssi_range: tuple[int, int] = (-95, -35),
    hear_probability: float = 0.7,
) -> list[AdvertisingPacket]:
    """A small random trace: a few devices heard sporadically by each sniffer, in random order."""
    n_devices = int(rng.integers(1, max_devices + 1))
    n_windows = int(rng.integers(1, max_windows + 1))
    duration = n_windows * window_ms
    rows: list[tuple[int, int, str, int]] = []
    for device in range(n_devices):
        period = int(rng.integers(2_000, 20_000))
        for t in range(int(rng.integers(0, period)), duration, period):
            for sniffer in sniffers:
                if rng.random() < hear_probability:
                    rows.append((t, sniffer, f"d{device}", int(rng.integers(rssi_range[0], rssi_range[1] + 1))))
    order = rng.permutation(len(rows))
    return packets(rows[i] for i in order)


def feature_vector(
    device: str = "dev",
    window: int = 8,
    *,
    f1: float = 0.0,
    f2: int = 0,
    f3: int = 0,
    f4: Optional[float] = 1.0,
    f5: Optional[float] = 1.0,
    f6: Optional[float] = 1.0,
    f7: float = 0.0,
    f8: int = 0,
    f9: Optional[float] = 0.0,
) -> FeatureVector:
    return FeatureVector(
        device=device, window=window, f1=f1, f2=f2, f3=f3, f4=f4, f5=f5, f6=f6, f7=f7, f8=f8, f9=f9
    )


def separable_dataset(rng: np.random.Generator, devices: int = 10, windows: int = 6) -> Dataset:
    """InQueue iff f1 > 0; the other continuous features are noise, binary ones random."""
    examples: list[LabeledExample] = []
    for d in range(devices):
        in_queue = d % 2 == 0
        for w in range(windows):
            slope = float(rng.uniform(1, 10)) if in_queue else float(rng.uniform(-10, -1))
            examples.append(
                LabeledExample(
                    features=feature_vector(
                        f"d{d}",
                        w,
                        f1=slope,
                        f2=int(rng.integers(0, 2)),
                        f3=int(rng.integers(0, 2)),
                        f4=float(rng.uniform(0, 50)),
                        f5=float(rng.uniform(0, 50)),
                        f6=float(rng.uniform(0, 50)),
                        f7=float(rng.uniform(0, 600)),
                        f8=int(rng.integers(0, 2)),
                        f9=float(rng.uniform(-1, 1)),
                    ),
                    label=Label.IN_QUEUE if in_queue else Label.NOT_IN_QUEUE,
                )
            )
    return Dataset(examples=tuple(examples))
