from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import Field
from typing_extensions import Annotated

from rssiqueue.core import ConfigModel, Deployment, SnifferId, SnifferRole
from rssiqueue.simulate.radio import RadioModel

Point = tuple[float, float]
# x_min, y_min, x_max, y_max
Bounds = tuple[float, float, float, float]

DEFAULT_WALK_BOUNDS: Bounds = (0.0, -6.0, 10.0, 6.0)


class SnifferPlacement(ConfigModel):
    id: int
    role: SnifferRole
    position: Point


class QueueGeometry(ConfigModel):
    """The queue runs along +x from the counter sniffer at the origin; slot 0 is served first.

    Every advance period the head is served and everyone moves up one slot. A served device wanders
    off and, unless ``rejoin_after`` is None, lines up again at the tail.
    """

    slot_spacing: float = Field(default=1.0, gt=0)
    head_offset: float = Field(default=1.0, ge=0)
    advance_period: float = Field(default=120.0, gt=0)
    # advance periods a served device wanders before rejoining at the tail; None: it never comes back
    rejoin_after: Optional[int] = Field(default=2, ge=1)

    def slot_position(self, slot: int) -> Point:
        return (self.head_offset + slot * self.slot_spacing, 0.0)


class InQueueBehavior(ConfigModel):
    type: Literal["in_queue"] = "in_queue"
    slot: int = Field(ge=0)
    device: Optional[str] = None


class RandomWalkBehavior(ConfigModel):
    type: Literal["random_walk"] = "random_walk"
    bounds: Bounds = DEFAULT_WALK_BOUNDS
    # standard deviation of one step, meters per emission
    step_sigma: float = Field(default=0.3, ge=0)
    # uniform within bounds when omitted
    start: Optional[Point] = None
    device: Optional[str] = None


class StaticBehavior(ConfigModel):
    type: Literal["static"] = "static"
    position: Point
    device: Optional[str] = None


Behavior = Annotated[Union[InQueueBehavior, RandomWalkBehavior, StaticBehavior], Field(discriminator="type")]

_NAME_PREFIX = {"in_queue": "queue", "random_walk": "walker", "static": "static"}


def default_sniffers() -> tuple[SnifferPlacement, ...]:
    return (
        SnifferPlacement(id=1, role=SnifferRole.COUNTER, position=(0.0, 0.0)),
        SnifferPlacement(id=2, role=SnifferRole.LEFT, position=(4.0, 1.5)),
        SnifferPlacement(id=3, role=SnifferRole.RIGHT, position=(4.0, -1.5)),
    )


def mixed_behaviors(in_queue: int, walkers: int, static: int) -> tuple[Behavior, ...]:
    behaviors: list[Behavior] = [InQueueBehavior(slot=slot) for slot in range(in_queue)]
    behaviors.extend(RandomWalkBehavior() for _ in range(walkers))
    static_positions = [(2.0, 4.0), (7.0, -4.0), (8.0, 3.0), (5.0, 5.0)]
    behaviors.extend(
        StaticBehavior(position=static_positions[i % len(static_positions)]) for i in range(static)
    )
    return tuple(behaviors)


class ScenarioSpec(ConfigModel):
    """A controllable queue experiment: sniffers, devices and the radio between them."""

    sniffers: tuple[SnifferPlacement, ...] = Field(default_factory=default_sniffers)
    queue: QueueGeometry = Field(default_factory=QueueGeometry)
    behaviors: tuple[Behavior, ...] = Field(default_factory=lambda: mixed_behaviors(7, 3, 2))
    # seconds between two advertisements of one device
    emission_period: float = Field(default=1.0, ge=0.001)
    duration: float = Field(default=1800.0, gt=0)
    seed: int = Field(default=0, ge=0)
    radio: RadioModel = Field(default_factory=RadioModel)
    # served devices walk within these bounds
    walker_bounds: Bounds = DEFAULT_WALK_BOUNDS
    walker_step_sigma: float = Field(default=0.3, ge=0)

    def model_post_init(self, __context: Any) -> None:  # noqa: ANN401
        self.deployment()
        names = self.device_names()
        if len(set(names)) != len(names):
            msg = f"Device ids must be unique, got {names}"
            raise ValueError(msg)
        for bounds in [self.walker_bounds, *(b.bounds for b in self.behaviors if isinstance(b, RandomWalkBehavior))]:
            if bounds[0] > bounds[2] or bounds[1] > bounds[3]:
                msg = f"Walk bounds must be (x_min, y_min, x_max, y_max), got {bounds}"
                raise ValueError(msg)

    def deployment(self) -> Deployment:
        return Deployment(sniffers=tuple(SnifferId(s.id, s.role) for s in self.sniffers))

    def queue_length(self) -> int:
        """Number of queue slots, up to the last occupied one."""
        return max((b.slot + 1 for b in self.behaviors if isinstance(b, InQueueBehavior)), default=0)

    def device_names(self) -> list[str]:
        counters = dict.fromkeys(_NAME_PREFIX.values(), 0)
        names: list[str] = []
        for behavior in self.behaviors:
            prefix = _NAME_PREFIX[behavior.type]
            names.append(behavior.device or f"{prefix}-{counters[prefix]}")
            counters[prefix] += 1
        return names


def default_scenario(seed: int = 0) -> ScenarioSpec:
    """Seven beacons advancing every 120 s with three walkers and two static devices, 30 minutes."""
    return ScenarioSpec(seed=seed)


def team_event_scenario(seed: int = 0) -> ScenarioSpec:
    """Eleven people: six queueing, three wandering and two standing still."""
    return ScenarioSpec(seed=seed, behaviors=mixed_behaviors(6, 3, 2))
