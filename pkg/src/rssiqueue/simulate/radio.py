"""Log-distance path loss with log-normal shadowing."""

from __future__ import annotations

from typing import Optional, Union

import numpy as np
from pydantic import Field

from rssiqueue.core import ConfigModel


class RadioModel(ConfigModel):
    # P0, dBm at 1 m
    tx_power: float = -45.0
    # n
    path_loss_exponent: float = Field(default=2.0, gt=0)
    # standard deviation of the gaussian shadowing, dB
    shadowing_sigma: float = Field(default=4.0, ge=0)
    # per-device antenna offset is drawn uniformly from [-range, +range] dBm
    antenna_offset_range: float = Field(default=6.0, ge=0)
    drop_probability: float = Field(default=0.1, ge=0, lt=1)
    # weaker packets are never heard
    sensitivity: float = -100.0
    min_distance: float = Field(default=0.1, gt=0)

    def noiseless(self) -> RadioModel:
        return self.model_copy(update={"shadowing_sigma": 0.0, "antenna_offset_range": 0.0, "drop_probability": 0.0})


def rssi_at(
    distance: Union[float, np.ndarray],
    radio: RadioModel,
    rng: Optional[np.random.Generator] = None,
    offset: float = 0.0,
) -> Union[float, np.ndarray]:
    """Received power at ``distance`` meters: ``P0 - 10·n·log10(d) + offset + N(0, shadowing_sigma)``.

    Distances below ``radio.min_distance`` (including d <= 0) are clamped to it. Shadowing is only
    drawn when ``rng`` is given.
    """
    d = np.maximum(np.asarray(distance, dtype=np.float64), radio.min_distance)
    value = radio.tx_power - 10 * radio.path_loss_exponent * np.log10(d) + offset
    if rng is not None and radio.shadowing_sigma > 0:
        value = value + rng.normal(0.0, radio.shadowing_sigma, size=d.shape)
    if np.ndim(value) == 0:
        return float(value)
    return value


def quantize(values: np.ndarray) -> np.ndarray:
    """Integer dBm as reported by a sniffer, never above 0."""
    return np.minimum(np.rint(values), 0).astype(np.int64)
