from __future__ import annotations


class RssiQueueError(Exception):
    """Base class for every error raised by rssiqueue."""


class OrderingError(RssiQueueError, ValueError):
    """Samples or packets are not sorted by timestamp."""


class MixedStreamError(RssiQueueError, ValueError):
    """Packets of different sniffers or devices were passed as one stream."""


class TrainingError(RssiQueueError): ...


class ArityError(RssiQueueError, ValueError): ...


class EvaluationError(RssiQueueError): ...


class ConfigError(RssiQueueError): ...


class DataFileError(RssiQueueError):
    """A trace, labels, features or model file cannot be used."""


class SchemaVersionError(DataFileError):
    """A file was written with another format version."""
