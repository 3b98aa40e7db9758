from __future__ import annotations

from typing import TYPE_CHECKING, Callable

import msgspec
import numpy as np
import pytest

from rssiqueue.classify import ModelFile, ModelKind, ModelSpec, load_model, predict_many, save_model, train
from rssiqueue.core import PipelineConfig
from rssiqueue.core.exceptions import DataFileError, SchemaVersionError
from rssiqueue.testing.helpers import separable_dataset

if TYPE_CHECKING:
    import pathlib


@pytest.mark.parametrize("kind", list(ModelKind))
def test_saved_model_predicts_the_same(
    rng: np.random.Generator, tmp_file_creator: Callable[..., pathlib.Path], kind: ModelKind
):
    dataset = separable_dataset(rng)
    model = train(dataset, ModelSpec(kind=kind, n_trees=5), config_hash=PipelineConfig().fingerprint())
    path = tmp_file_creator("msgpack")
    save_model(path, model)

    loaded = load_model(path, pipeline=PipelineConfig())
    assert loaded == model
    assert predict_many(loaded, dataset.vectors) == predict_many(model, dataset.vectors)


class TestModelFile:
    @pytest.fixture()
    def model(self, rng: np.random.Generator):
        return train(separable_dataset(rng), ModelSpec(kind=ModelKind.DECISION_TREE))

    def test_other_version(self, model):
        raw = ModelFile(model=model, version=2).to_bytes()
        with pytest.raises(SchemaVersionError):
            ModelFile.from_bytes(raw)

    @pytest.mark.parametrize(
        "raw",
        [b"not a model", msgspec.msgpack.encode({"format": "other", "version": 1}), b""],
        ids=["garbage", "other-format", "empty"],
    )
    def test_not_a_model(self, raw: bytes):
        with pytest.raises(DataFileError):
            ModelFile.from_bytes(raw)

    def test_truncated_model(self):
        raw = msgspec.msgpack.encode({"format": "rssiqueue-model", "version": 1, "model": {"kind": "decision_tree"}})
        with pytest.raises(DataFileError, match="malformed"):
            ModelFile.from_bytes(raw)

    def test_trained_under_other_pipeline(self, tmp_file_creator: Callable[..., pathlib.Path]):
        path = tmp_file_creator("msgpack")
        save_model(path, train(separable_dataset(np.random.default_rng(1)), config_hash="0" * 64))
        with pytest.raises(DataFileError, match="another pipeline configuration"):
            load_model(path, pipeline=PipelineConfig())
        assert load_model(path).config_hash == "0" * 64
