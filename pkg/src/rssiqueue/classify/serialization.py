from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Union

import msgspec
from msgspec import Struct

from rssiqueue.classify.base import TrainedModel
from rssiqueue.core.exceptions import DataFileError, SchemaVersionError

if TYPE_CHECKING:
    from rssiqueue.core import PipelineConfig

MODEL_FORMAT = "rssiqueue-model"
MODEL_FORMAT_VERSION = 1


class ModelHeader(Struct):
    format: str
    version: int


class ModelFile(Struct):
    model: TrainedModel
    format: str = MODEL_FORMAT
    version: int = MODEL_FORMAT_VERSION

    def to_bytes(self) -> bytes:
        return msgspec.msgpack.encode(self)

    @classmethod
    def from_bytes(cls, raw: bytes, *, source: str = "<bytes>") -> ModelFile:
        """Decode a model file, checking the format marker and version first.

        Raises:
            DataFileError: If ``raw`` is not a model file
            SchemaVersionError: If the file was written with another format version
        """
        try:
            header = msgspec.msgpack.decode(raw, type=ModelHeader)
        except (msgspec.DecodeError, msgspec.ValidationError) as error:
            msg = f"{source} is not a model file: {error}"
            raise DataFileError(msg) from error
        if header.format != MODEL_FORMAT:
            msg = f"{source} has format {header.format!r}, expected {MODEL_FORMAT!r}"
            raise DataFileError(msg)
        if header.version != MODEL_FORMAT_VERSION:
            msg = f"{source} has model format version {header.version}, expected {MODEL_FORMAT_VERSION}"
            raise SchemaVersionError(msg)
        try:
            return msgspec.msgpack.decode(raw, type=cls)
        except (msgspec.DecodeError, msgspec.ValidationError) as error:
            msg = f"{source} holds a malformed model: {error}"
            raise DataFileError(msg) from error


def save_model(path: Union[str, Path], model: TrainedModel) -> None:
    Path(path).write_bytes(ModelFile(model=model).to_bytes())


def load_model(path: Union[str, Path], *, pipeline: PipelineConfig | None = None) -> TrainedModel:
    """Read a model written by :func:`save_model`.

    Args:
        path: The model file
        pipeline: When given, the model must have been trained on features of this configuration

    Raises:
        DataFileError: If the file is not a valid model or was trained under another pipeline configuration
        SchemaVersionError: If the file was written with another format version
    """
    model = ModelFile.from_bytes(Path(path).read_bytes(), source=str(path)).model
    if pipeline is not None and model.config_hash and model.config_hash != pipeline.fingerprint():
        msg = f"{path} was trained on features of another pipeline configuration"
        raise DataFileError(msg)
    return model
