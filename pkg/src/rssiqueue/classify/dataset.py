from __future__ import annotations

from typing import TYPE_CHECKING, Union

import numpy as np
from msgspec import Struct

from rssiqueue.core import BINARY_FEATURES, FEATURE_NAMES, FeatureVector, Label, LabeledExample

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

N_FEATURES = len(FEATURE_NAMES)
BINARY_COLUMNS: tuple[int, ...] = tuple(i for i, name in enumerate(FEATURE_NAMES) if name in BINARY_FEATURES)
CONTINUOUS_COLUMNS: tuple[int, ...] = tuple(i for i, name in enumerate(FEATURE_NAMES) if name not in BINARY_FEATURES)
VARIANCE_FEATURES: tuple[str, ...] = ("f4", "f5", "f6")


class Imputation(Struct, frozen=True):
    """Fill values for missing features, learned from a training split.

    A missing variance reads as the most unstable value seen in training; a missing correlation as 0.
    """

    f4: float = 0.0
    f5: float = 0.0
    f6: float = 0.0
    f9: float = 0.0

    @classmethod
    def fit(cls, vectors: Iterable[FeatureVector]) -> Imputation:
        maxima: dict[str, float] = {}
        for vector in vectors:
            for name in VARIANCE_FEATURES:
                value = getattr(vector, name)
                if value is not None and value > maxima.get(name, -np.inf):
                    maxima[name] = value
        # a column never present in training falls back to 0
        return cls(**{name: float(maxima.get(name, 0.0)) for name in VARIANCE_FEATURES})

    def fill(self, name: str) -> float:
        return getattr(self, name)


def impute(vectors: Sequence[FeatureVector], imputation: Imputation | None = None) -> np.ndarray:
    """Build the complete ``(n, 9)`` feature matrix, replacing missing values.

    Args:
        vectors: Feature vectors in row order
        imputation: Fill values; learned from ``vectors`` when omitted

    Returns:
        A float64 matrix with columns f1..f9
    """
    imputation = imputation or Imputation.fit(vectors)
    matrix = np.empty((len(vectors), N_FEATURES), dtype=np.float64)
    for row, vector in enumerate(vectors):
        for column, (name, value) in enumerate(zip(FEATURE_NAMES, vector.values())):
            matrix[row, column] = imputation.fill(name) if value is None else value
    return matrix


class Dataset(Struct, frozen=True):
    examples: tuple[LabeledExample, ...]

    @classmethod
    def from_pairs(cls, vectors: Iterable[FeatureVector], labels: Iterable[Union[Label, str]]) -> Dataset:
        return cls(
            examples=tuple(
                LabeledExample(features=vector, label=Label(label)) for vector, label in zip(vectors, labels)
            )
        )

    @property
    def vectors(self) -> list[FeatureVector]:
        return [example.features for example in self.examples]

    @property
    def labels(self) -> np.ndarray:
        return np.array([example.label.as_int for example in self.examples], dtype=np.int64)

    @property
    def devices(self) -> list[str]:
        return sorted({example.features.device for example in self.examples})

    @property
    def missing(self) -> list[tuple[str, ...]]:
        """Per example, the features that were missing before imputation."""
        return [
            tuple(name for name, value in zip(FEATURE_NAMES, example.features.values()) if value is None)
            for example in self.examples
        ]

    def subset(self, devices: Iterable[str]) -> Dataset:
        keep = set(devices)
        return Dataset(examples=tuple(example for example in self.examples if example.features.device in keep))

    def class_counts(self) -> dict[str, int]:
        counts = {"in-queue": 0, "not-in-queue": 0}
        for example in self.examples:
            counts[example.label.value] += 1
        return counts

    def __len__(self) -> int:
        return len(self.examples)
