from .base import (
    ForestParams,
    Leaf,
    Learner,
    ModelKind,
    ModelSpec,
    NaiveBayesParams,
    Split,
    TrainedModel,
    TreeParams,
)
from .dataset import Dataset, Imputation, impute
from .evaluate import EvalProtocol, EvalReport, device_folds, evaluate, train_test_split_devices
from .model import predict, predict_many, predict_matrix, predict_proba, train
from .registry import LearnerRegistry, default_registry, learners
from .serialization import ModelFile, load_model, save_model

__all__ = [
    "Dataset",
    "EvalProtocol",
    "EvalReport",
    "ForestParams",
    "Imputation",
    "Leaf",
    "Learner",
    "LearnerRegistry",
    "ModelFile",
    "ModelKind",
    "ModelSpec",
    "NaiveBayesParams",
    "Split",
    "TrainedModel",
    "TreeParams",
    "default_registry",
    "device_folds",
    "evaluate",
    "impute",
    "learners",
    "load_model",
    "predict",
    "predict_many",
    "predict_matrix",
    "predict_proba",
    "save_model",
    "train",
    "train_test_split_devices",
]
