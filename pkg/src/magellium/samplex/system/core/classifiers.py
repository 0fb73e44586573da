from abc import ABC, abstractmethod
from typing import Callable, Iterable, Mapping

from magellium.samplex.system.common.digests import digest_lines
from magellium.samplex.system.common.errors import UndefinedInstanceError, ValidationError
from magellium.samplex.system.core.theories import Instance, Theory, enumerate_feature_space


class Classifier(ABC):
    """A deterministic map from instances to class labels of a theory."""

    def __init__(self, theory: Theory):
        self.__theory = theory

    @property
    def theory(self) -> Theory:
        return self.__theory

    @abstractmethod
    def predict(self, instance: Instance) -> str:
        raise NotImplementedError()

    def is_defined(self, instance: Instance) -> bool:
        return True

    def digest_on(self, instances: Iterable[Instance]) -> str:
        """Digest of the labels this classifier assigns to the given instances."""
        return digest_lines(f"{instance.to_text()}->{self.predict(instance)}" for instance in sorted(instances))

    def _check_label(self, label: str) -> str:
        if (label not in self.__theory.classes):
            raise ValidationError(f"classifier returned '{label}', which is not a class of the theory", label=label)
        return label


class TableClassifier(Classifier):
    """Explicit instance to label mapping; total only over its table."""

    def __init__(self, theory: Theory, table: Mapping[Instance, str]):
        super().__init__(theory)
        for instance, label in table.items():
            if (label not in theory.classes):
                raise ValidationError(f"label '{label}' is not a class of the theory", instance=instance.to_text())
        self.__table: dict[Instance, str] = dict(table)

    @staticmethod
    def of_rows(theory: Theory, rows: Iterable[tuple[tuple[str, ...], str]]) -> "TableClassifier":
        return TableClassifier(theory, {theory.instance(values): str(label) for values, label in rows})

    @property
    def table(self) -> Mapping[Instance, str]:
        return self.__table

    def is_defined(self, instance: Instance) -> bool:
        return instance in self.__table

    def is_total(self, cap: int) -> bool:
        return len(self.__table) == self.theory.feature_space_size() and all(
            instance in self.__table for instance in enumerate_feature_space(self.theory, cap)
        )

    def predict(self, instance: Instance) -> str:
        label: str | None = self.__table.get(instance)
        if (label is None):
            raise UndefinedInstanceError("classifier is undefined on this instance", instance=instance.to_text())
        return label


class CallableClassifier(Classifier):
    """Opaque black box wrapped around a predict callback."""

    def __init__(self, theory: Theory, function: Callable[[Instance], str]):
        super().__init__(theory)
        self.__function = function

    def predict(self, instance: Instance) -> str:
        return self._check_label(str(self.__function(instance)))


def predict(classifier: Classifier, instance: Instance) -> str:
    return classifier.predict(instance)
