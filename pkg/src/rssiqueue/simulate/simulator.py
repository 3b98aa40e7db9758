from __future__ import annotations

from typing import TYPE_CHECKING, NamedTuple, Optional

import numpy as np
from msgspec import Struct

from rssiqueue.core import AdvertisingPacket, Label, seconds_to_ms
from rssiqueue.core.logging import get_logger
from rssiqueue.simulate.radio import quantize, rssi_at
from rssiqueue.simulate.scenario import InQueueBehavior, RandomWalkBehavior, StaticBehavior

if TYPE_CHECKING:
    from rssiqueue.simulate.scenario import Behavior, Bounds, Point, ScenarioSpec

logger = get_logger(__name__)


class InQueueSpan(Struct, frozen=True):
    """``[start, end)`` in ms during which a device waits in the queue; ``served`` is the departure time."""

    start: int
    end: int
    served: Optional[int]


class GroundTruth(Struct, frozen=True):
    duration_ms: int
    devices: tuple[str, ...]
    # every stint of a device in the queue, in time order
    spans: dict[str, tuple[InQueueSpan, ...]]

    def service_times(self, device: str) -> tuple[int, ...]:
        return tuple(span.served for span in self.spans.get(device, ()) if span.served is not None)

    def label(self, device: str, start: int, end: int) -> Label:
        """InQueue iff one stint in the queue covers the whole ``[start, end)``, clipped to the run."""
        end = min(end, self.duration_ms)
        for span in self.spans.get(device, ()):
            if span.start <= start and end <= span.end:
                return Label.IN_QUEUE
        return Label.NOT_IN_QUEUE

    def last_window(self, epoch_ms: int, window_ms: int) -> int:
        return max(0, (self.duration_ms - 1 - epoch_ms) // window_ms)

    def window_labels(
        self, epoch_ms: int, window_ms: int, last_window: Optional[int] = None
    ) -> dict[tuple[str, int], Label]:
        """Label of every (device, window) on the grid starting at ``epoch_ms``."""
        if last_window is None:
            last_window = self.last_window(epoch_ms, window_ms)
        labels: dict[tuple[str, int], Label] = {}
        for device in self.devices:
            for window in range(last_window + 1):
                start = epoch_ms + window * window_ms
                labels[device, window] = self.label(device, start, start + window_ms)
        return labels


def _clip(point: np.ndarray, bounds: Bounds) -> np.ndarray:
    return np.clip(point, (bounds[0], bounds[1]), (bounds[2], bounds[3]))


def random_walk(rng: np.random.Generator, start: Point, steps: int, sigma: float, bounds: Bounds) -> np.ndarray:
    """``steps`` positions of a bounded Gaussian walk; the first one is ``start``."""
    positions = np.empty((steps, 2))
    if not steps:
        return positions
    moves = rng.normal(0.0, sigma, size=(steps, 2))
    position = _clip(np.asarray(start, dtype=np.float64), bounds)
    positions[0] = position
    for i in range(1, steps):
        position = _clip(position + moves[i], bounds)
        positions[i] = position
    return positions


class _DeviceTrack(NamedTuple):
    positions: np.ndarray
    spans: tuple[InQueueSpan, ...] = ()


def queue_spans(
    slot: int, queue_length: int, advance_ms: int, rejoin_after: Optional[int], duration_ms: int
) -> tuple[InQueueSpan, ...]:
    """Stints in the queue of the device starting in ``slot``.

    The device is served after ``slot + 1`` advances. When ``rejoin_after`` is set it comes back at the
    tail that many advances later and waits ``queue_length`` advances again, and so on until the run ends.
    """
    spans: list[InQueueSpan] = []
    start, end = 0, (slot + 1) * advance_ms
    while start < duration_ms:
        spans.append(InQueueSpan(start=start, end=min(end, duration_ms), served=end if end <= duration_ms else None))
        if rejoin_after is None:
            break
        start = end + rejoin_after * advance_ms
        end = start + queue_length * advance_ms
    return tuple(spans)


def _track(
    behavior: Behavior,
    spec: ScenarioSpec,
    rng: np.random.Generator,
    times_ms: np.ndarray,
    duration_ms: int,
    queue_length: int,
) -> _DeviceTrack:
    if isinstance(behavior, StaticBehavior):
        return _DeviceTrack(positions=np.tile(np.asarray(behavior.position, dtype=np.float64), (len(times_ms), 1)))
    if isinstance(behavior, RandomWalkBehavior):
        if behavior.start is not None:
            start = behavior.start
        else:
            x_min, y_min, x_max, y_max = behavior.bounds
            start = (float(rng.uniform(x_min, x_max)), float(rng.uniform(y_min, y_max)))
        return _DeviceTrack(positions=random_walk(rng, start, len(times_ms), behavior.step_sigma, behavior.bounds))
    if not isinstance(behavior, InQueueBehavior):
        msg = f"Unknown device behavior {behavior!r}"
        raise TypeError(msg)
    queue = spec.queue
    advance_ms = seconds_to_ms(queue.advance_period)
    slots = behavior.slot - times_ms // advance_ms
    if queue.rejoin_after is not None:
        # slots past the tail count the advances left before rejoining
        slots %= queue_length + queue.rejoin_after
    waiting = (slots >= 0) & (slots < queue_length)
    positions = np.empty((len(times_ms), 2))
    positions[waiting, 0] = queue.head_offset + slots[waiting] * queue.slot_spacing
    positions[waiting, 1] = 0.0
    away = np.flatnonzero(~waiting)
    # served devices leave from the counter slot and wander
    for stint in np.split(away, np.flatnonzero(np.diff(away) > 1) + 1):
        if stint.size:
            positions[stint] = random_walk(
                rng, queue.slot_position(0), stint.size, spec.walker_step_sigma, spec.walker_bounds
            )
    return _DeviceTrack(
        positions=positions,
        spans=queue_spans(behavior.slot, queue_length, advance_ms, queue.rejoin_after, duration_ms),
    )


def simulate(spec: ScenarioSpec) -> tuple[list[AdvertisingPacket], GroundTruth]:
    """Generate the sniffed trace of a scenario and its ground truth.

    Every device advertises once per emission period from its own phase offset. Each sniffer hears
    each advertisement independently: the packet may be dropped, and its RSSI depends on the distance,
    the device's antenna offset and shadowing noise. The same spec always yields the same trace.

    Returns:
        The packets sorted by (timestamp, sniffer, device) and the ground truth
    """
    duration_ms = seconds_to_ms(spec.duration)
    period_ms = seconds_to_ms(spec.emission_period)
    radio = spec.radio
    names = spec.device_names()
    device_seeds = np.random.SeedSequence(spec.seed).spawn(len(names))
    rows: list[tuple[int, int, str, int]] = []
    spans: dict[str, tuple[InQueueSpan, ...]] = {}
    queue_length = spec.queue_length()
    for name, behavior, seed in zip(names, spec.behaviors, device_seeds):
        rng = np.random.default_rng(seed)
        phase = int(rng.integers(0, period_ms))
        times_ms = np.arange(phase, duration_ms, period_ms, dtype=np.int64)
        offset = float(rng.uniform(-radio.antenna_offset_range, radio.antenna_offset_range))
        track = _track(behavior, spec, rng, times_ms, duration_ms, queue_length)
        if track.spans:
            spans[name] = track.spans
        for sniffer in spec.sniffers:
            x, y = sniffer.position
            distance = np.hypot(track.positions[:, 0] - x, track.positions[:, 1] - y)
            power = np.asarray(rssi_at(distance, radio, rng, offset))
            heard = (rng.random(len(times_ms)) >= radio.drop_probability) & (power >= radio.sensitivity)
            rows.extend(
                (int(t), sniffer.id, name, int(rssi))
                for t, rssi in zip(times_ms[heard], quantize(power[heard]))
            )
    rows.sort(key=lambda row: (row[0], row[1], row[2]))
    packets = [AdvertisingPacket(t=t, sniffer=sniffer, device=device, rssi=rssi) for t, sniffer, device, rssi in rows]
    truth = GroundTruth(duration_ms=duration_ms, devices=tuple(sorted(names)), spans=spans)
    logger.debug("scenario simulated", devices=len(names), packets=len(packets), duration_s=spec.duration)
    return packets, truth
