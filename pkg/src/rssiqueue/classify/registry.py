from __future__ import annotations

from typing import TYPE_CHECKING, Callable, Union

from rssiqueue.classify.base import ModelKind
from rssiqueue.classify.forest import RandomForestLearner
from rssiqueue.classify.naive_bayes import NaiveBayesLearner
from rssiqueue.classify.tree import DecisionTreeLearner
from rssiqueue.core.exceptions import ConfigError

if TYPE_CHECKING:
    from rssiqueue.classify.base import Learner

__all__ = ("LearnerNotExistsError", "LearnerRegistry", "default_registry")


class LearnerNotExistsError(ConfigError): ...


class LearnerRegistry:
    """Maps each :class:`ModelKind` to the learner implementing it."""

    def __init__(self) -> None:
        self._factories: dict[ModelKind, Callable[[], Learner]] = {}
        self._learners: dict[ModelKind, Learner] = {}

    ####################
    # FOR PUBLIC USAGE #
    ####################

    def register(self, kind: ModelKind, factory: Callable[[], Learner]) -> None:
        self._factories[kind] = factory
        self._learners.pop(kind, None)

    def get(self, kind: Union[ModelKind, str]) -> Learner:
        try:
            kind = ModelKind(kind)
            factory = self._factories[kind]
        except (KeyError, ValueError) as error:
            msg = f"Learner for {kind!r} does not exist in the learner registry {self!r}"
            raise LearnerNotExistsError(msg) from error
        if kind not in self._learners:
            self._learners[kind] = factory()
        return self._learners[kind]

    def kinds(self) -> list[ModelKind]:
        return list(self._factories)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({[kind.value for kind in self._factories]})"


def default_registry() -> LearnerRegistry:
    registry = LearnerRegistry()
    registry.register(ModelKind.NAIVE_BAYES, NaiveBayesLearner)
    registry.register(ModelKind.DECISION_TREE, DecisionTreeLearner)
    registry.register(ModelKind.RANDOM_FOREST, RandomForestLearner)
    return registry


learners = default_registry()
