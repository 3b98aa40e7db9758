from __future__ import annotations

from pathlib import Path
from typing import Any, Literal, Optional, Union

import pydantic
import yaml
from pydantic import Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from rssiqueue.classify import EvalProtocol, ModelKind, ModelSpec
from rssiqueue.core import ConfigModel, PipelineConfig
from rssiqueue.core.exceptions import ConfigError
from rssiqueue.core.logging import LoggingConfig
from rssiqueue.features import FEATURE_GROUPS
from rssiqueue.simulate import ScenarioSpec

AxisName = Literal["b", "backtracking", "window_duration", "sniffer_count", "classifier", "feature_groups"]
AxisValue = Union[int, float, str]

# axes that change a pipeline parameter
PIPELINE_AXES: dict[str, str] = {
    "b": "backtracking",
    "backtracking": "backtracking",
    "window_duration": "window_duration",
}
MAX_SNIFFERS = 3


class SweepAxis(ConfigModel):
    """One swept parameter. ``feature_groups`` values join group names with ``+``."""

    name: AxisName
    values: tuple[AxisValue, ...] = Field(min_length=1)

    def model_post_init(self, __context: Any) -> None:  # noqa: ANN401
        for value in self.values:
            self._check(value)

    def _check(self, value: AxisValue) -> None:
        if self.name in ("b", "backtracking", "sniffer_count") and (not isinstance(value, int) or value < 1):
            msg = f"Sweep axis {self.name!r} takes positive integers, got {value!r}"
            raise ValueError(msg)
        if self.name == "sniffer_count" and value > MAX_SNIFFERS:  # type: ignore
            msg = f"Sweep axis 'sniffer_count' takes values 1 to {MAX_SNIFFERS}, got {value!r}"
            raise ValueError(msg)
        if self.name == "window_duration" and (isinstance(value, str) or value <= 0):
            msg = f"Sweep axis 'window_duration' takes positive seconds, got {value!r}"
            raise ValueError(msg)
        if self.name == "classifier" and value not in {kind.value for kind in ModelKind}:
            msg = f"Sweep axis 'classifier' takes {[kind.value for kind in ModelKind]}, got {value!r}"
            raise ValueError(msg)
        if self.name == "feature_groups":
            groups = set(str(value).split("+"))
            if not groups <= set(FEATURE_GROUPS):
                msg = f"Sweep axis 'feature_groups' takes '+'-joined names of {sorted(FEATURE_GROUPS)}, got {value!r}"
                raise ValueError(msg)


def default_sweeps() -> tuple[SweepAxis, ...]:
    return (
        SweepAxis(name="b", values=(2, 4, 6, 8, 10, 12)),
        SweepAxis(name="sniffer_count", values=(1, 3)),
    )


class EvaluationConfig(ConfigModel):
    protocol: EvalProtocol = Field(default_factory=EvalProtocol)
    # scenario seeds per sweep point: seed, seed + 1, ...
    seeds: int = Field(default=10, ge=1)
    workers: int = Field(default=4, ge=1)
    classifiers: tuple[ModelKind, ...] = Field(default=tuple(ModelKind), min_length=1)
    sweeps: tuple[SweepAxis, ...] = Field(default_factory=default_sweeps)


class RunConfig(BaseSettings):
    """Everything one command needs. Values come from the YAML file, overridden by ``RSSIQUEUE_*`` variables."""

    model_config = SettingsConfigDict(
        env_prefix="RSSIQUEUE_",
        env_nested_delimiter="__",
        extra="forbid",
    )

    seed: int = Field(default=0, ge=0)
    pipeline: PipelineConfig = Field(default_factory=PipelineConfig)
    model: ModelSpec = Field(default_factory=ModelSpec)
    scenario: ScenarioSpec = Field(default_factory=ScenarioSpec)
    evaluation: EvaluationConfig = Field(default_factory=EvaluationConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # environment first: it overrides the config file passed as init values
        return env_settings, init_settings

    ####################
    # FOR PUBLIC USAGE #
    ####################

    def scenario_spec(self, offset: int = 0) -> ScenarioSpec:
        """The scenario, seeded with ``seed + offset`` unless the file pins its own seed."""
        base = self.scenario.seed if "seed" in self.scenario.model_fields_set else self.seed
        return self.scenario.model_copy(update={"seed": base + offset})

    def model_spec(self, kind: Optional[ModelKind] = None) -> ModelSpec:
        update: dict[str, Any] = {} if "seed" in self.model.model_fields_set else {"seed": self.seed}
        if kind is not None:
            update["kind"] = kind
        return self.model.model_copy(update=update)

    def with_seed(self, seed: Optional[int]) -> RunConfig:
        if seed is None:
            return self
        if seed < 0:
            msg = f"Seed must be non-negative, got {seed}"
            raise ConfigError(msg)
        return self.model_copy(update={"seed": seed})


def read_yaml(path: Union[str, Path]) -> dict[str, Any]:
    """Read a YAML mapping; an empty file is an empty mapping.

    Raises:
        ConfigError: If the file cannot be read or is not a YAML mapping
    """
    path = Path(path)
    try:
        loaded = yaml.load(path.read_bytes(), Loader=getattr(yaml, "CSafeLoader", yaml.SafeLoader))
    except (OSError, yaml.YAMLError) as error:
        msg = f"Error reading config file {path}: {error}"
        raise ConfigError(msg) from error
    if loaded is None:
        return {}
    if not isinstance(loaded, dict):
        msg = f"Config file {path} must hold a mapping, got {type(loaded).__name__}"
        raise ConfigError(msg)
    return loaded


def load_run_config(path: Optional[Union[str, Path]] = None, *, seed: Optional[int] = None) -> RunConfig:
    """Build the run configuration from a YAML file, the environment and a seed override.

    Args:
        path: YAML config file, defaults only when omitted
        seed: Overrides the seed of the file and the environment

    Raises:
        ConfigError: If the file is unreadable or the configuration is invalid
    """
    values = read_yaml(path) if path is not None else {}
    try:
        config = RunConfig(**values)
    except (pydantic.ValidationError, ValueError) as error:
        source = f"config file {path}" if path is not None else "the environment"
        msg = f"Configuration validation error in {source}: {error}"
        raise ConfigError(msg) from error
    return config.with_seed(seed)
