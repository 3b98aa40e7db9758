from __future__ import annotations

import pytest

from rssiqueue.core import PipelineConfig
from rssiqueue.simulate import RadioModel, ScenarioSpec, StaticBehavior, mixed_behaviors


@pytest.fixture()
def pipeline_config() -> PipelineConfig:
    return PipelineConfig()


@pytest.fixture()
def noiseless_scenario() -> ScenarioSpec:
    """Four queueing beacons, one walker and one static device, no radio noise, 10 minutes."""
    behaviors = (*mixed_behaviors(4, 1, 0), StaticBehavior(position=(2.0, 4.0)))
    return ScenarioSpec(behaviors=behaviors, duration=600.0, radio=RadioModel().noiseless(), seed=7)
