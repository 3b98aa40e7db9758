from ._base import (
    BINARY_FEATURES,
    CORRELATION_EPSILON,
    FEATURE_NAMES,
    AdvertisingPacket,
    Deployment,
    FeatureVector,
    Label,
    LabeledExample,
    RssiSample,
    SnifferId,
    SnifferRole,
    TimeWindow,
    WindowedStream,
)
from .config import ConfigModel, PipelineConfig
from .windows import partition_into_windows, seconds_to_ms, window_index

__all__ = [
    "BINARY_FEATURES",
    "CORRELATION_EPSILON",
    "FEATURE_NAMES",
    "AdvertisingPacket",
    "ConfigModel",
    "Deployment",
    "FeatureVector",
    "Label",
    "LabeledExample",
    "PipelineConfig",
    "RssiSample",
    "SnifferId",
    "SnifferRole",
    "TimeWindow",
    "WindowedStream",
    "partition_into_windows",
    "seconds_to_ms",
    "window_index",
]
