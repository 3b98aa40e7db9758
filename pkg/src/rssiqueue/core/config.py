from __future__ import annotations

import hashlib
from typing import Any

import msgspec
from pydantic import BaseModel, ConfigDict, Field


class ConfigModel(BaseModel):
    """Base for every configuration section: unknown keys are rejected and values are immutable."""

    model_config = ConfigDict(extra="forbid", frozen=True)


class PipelineConfig(ConfigModel):
    """Preprocessing and feature extraction parameters. Defaults are the controlled-experiment defaults."""

    # bucket length for averaging raw packets, seconds
    aggregation_period: float = Field(default=30.0, gt=0)
    # smoothing weight given to the previous output on a falling signal
    alpha: float = Field(default=0.9, ge=0, le=1)
    window_duration: float = Field(default=60.0, gt=0)
    # number of past windows joined to the current one
    backtracking: int = Field(default=8, ge=1)
    # slope above which a device approaches the counter, dBm
    tau_f2: float = 5.0
    # RSSI above which a device is near the counter, dBm
    tau_f3: float = -55.0
    # correlated peers needed for f8
    peer_count: int = Field(default=3, ge=1)
    # correlation threshold for f8
    tau_f8: float = Field(default=0.3, ge=-1, le=1)
    min_paired_windows: int = Field(default=3, ge=2)

    def model_post_init(self, __context: Any) -> None:  # noqa: ANN401
        if self.window_duration < self.aggregation_period:
            msg = (
                f"Configuration field {self.window_duration=} "
                f"must not be shorter than {self.aggregation_period=}"
            )
            raise ValueError(msg)

    def fingerprint(self) -> str:
        """SHA-256 of the canonical JSON form, recorded in model files."""
        return hashlib.sha256(msgspec.json.encode(self.model_dump(mode="json"), order="sorted")).hexdigest()
