from .radio import RadioModel, quantize, rssi_at
from .scenario import (
    Behavior,
    InQueueBehavior,
    QueueGeometry,
    RandomWalkBehavior,
    ScenarioSpec,
    SnifferPlacement,
    StaticBehavior,
    default_scenario,
    mixed_behaviors,
    team_event_scenario,
)
from .simulator import GroundTruth, InQueueSpan, queue_spans, random_walk, simulate

__all__ = [
    "Behavior",
    "GroundTruth",
    "InQueueBehavior",
    "InQueueSpan",
    "QueueGeometry",
    "RadioModel",
    "RandomWalkBehavior",
    "ScenarioSpec",
    "SnifferPlacement",
    "StaticBehavior",
    "default_scenario",
    "mixed_behaviors",
    "quantize",
    "queue_spans",
    "random_walk",
    "rssi_at",
    "simulate",
    "team_event_scenario",
]
