from __future__ import annotations

import math

import numpy as np
import pytest

from rssiqueue.classify import (
    Dataset,
    LearnerRegistry,
    ModelKind,
    ModelSpec,
    learners,
    predict,
    predict_many,
    predict_proba,
    train,
)
from rssiqueue.classify.registry import LearnerNotExistsError
from rssiqueue.core import Label
from rssiqueue.core.exceptions import ArityError, ConfigError, TrainingError
from rssiqueue.testing.helpers import feature_vector, separable_dataset


@pytest.fixture()
def tree_model(rng: np.random.Generator):
    return train(separable_dataset(rng), ModelSpec(kind=ModelKind.DECISION_TREE))


class TestTrain:
    def test_needs_both_classes(self):
        dataset = Dataset.from_pairs([feature_vector("a"), feature_vector("b")], [Label.IN_QUEUE] * 2)
        with pytest.raises(TrainingError, match="both classes"):
            train(dataset)

    def test_records_configuration(self, rng: np.random.Generator):
        spec = ModelSpec(kind=ModelKind.NAIVE_BAYES, var_smoothing=1e-6)
        model = train(separable_dataset(rng), spec, config_hash="abc")
        assert model.kind is ModelKind.NAIVE_BAYES
        assert model.model_spec() == spec
        assert model.config_hash == "abc"
        assert model.n_features == 9


class TestPredict:
    def test_single_vector(self, tree_model):
        assert predict(tree_model, [5.0, 0, 0, 1.0, 1.0, 1.0, 10.0, 0, 0.0]) is Label.IN_QUEUE
        assert predict(tree_model, np.array([-5.0, 0, 0, 1.0, 1.0, 1.0, 10.0, 0, 0.0])) is Label.NOT_IN_QUEUE

    @pytest.mark.parametrize(
        "vector",
        [
            [1.0] * 8,
            [1.0] * 10,
            [1.0, 0, 0, math.nan, 1.0, 1.0, 1.0, 0, 0.0],
            [[1.0] * 9, [1.0] * 9],
        ],
        ids=["short", "long", "missing", "two-vectors"],
    )
    def test_rejects_malformed_vectors(self, tree_model, vector):
        with pytest.raises(ArityError):
            predict(tree_model, vector)

    def test_many_imputes_missing_values(self, tree_model):
        vectors = [feature_vector(f1=4.0, f4=None, f9=None), feature_vector(f1=-4.0, f5=None)]
        assert predict_many(tree_model, vectors) == [Label.IN_QUEUE, Label.NOT_IN_QUEUE]
        assert predict_many(tree_model, []) == []

    def test_posteriors_only_for_naive_bayes(self, tree_model):
        with pytest.raises(TypeError):
            predict_proba(tree_model, [feature_vector()])


class TestRegistry:
    def test_default_kinds(self):
        assert set(learners.kinds()) == set(ModelKind)

    @pytest.mark.parametrize("kind", ["svm", ""])
    def test_unknown_kind(self, kind: str):
        with pytest.raises(LearnerNotExistsError) as error:
            learners.get(kind)
        assert isinstance(error.value, ConfigError)

    def test_unregistered_kind(self):
        with pytest.raises(LearnerNotExistsError):
            LearnerRegistry().get(ModelKind.NAIVE_BAYES)

    def test_learner_is_reused(self):
        assert learners.get("decision_tree") is learners.get(ModelKind.DECISION_TREE)
