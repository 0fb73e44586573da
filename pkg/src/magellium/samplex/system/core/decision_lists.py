from dataclasses import dataclass
from typing import Iterable

from magellium.samplex.system.common.errors import ValidationError
from magellium.samplex.system.core.classifiers import Classifier
from magellium.samplex.system.core.theories import Instance, PartialAssignment, Theory, covers


@dataclass(frozen=True)
class DecisionRule:
    premise: PartialAssignment
    label: str

    def to_line(self) -> str:
        return f"{self.premise.to_text()} -> {self.label}"


class DecisionListClassifier(Classifier):
    """Ordered rules, first match wins, otherwise the default class."""

    def __init__(self, theory: Theory, rules: Iterable[DecisionRule], default: str):
        super().__init__(theory)
        if (default not in theory.classes):
            raise ValidationError(f"default class '{default}' is not a class of the theory", default=default)
        kept: list[DecisionRule] = []
        seen: set[PartialAssignment] = set()
        for rule in rules:
            if (rule.label not in theory.classes):
                raise ValidationError(f"rule class '{rule.label}' is not a class of the theory", rule=rule.to_line())
            if (rule.premise in seen):
                continue
            seen.add(rule.premise)
            kept.append(rule)
        self.__rules: tuple[DecisionRule, ...] = tuple(kept)
        self.__default = default

    @property
    def rules(self) -> tuple[DecisionRule, ...]:
        return self.__rules

    @property
    def default(self) -> str:
        return self.__default

    def predict(self, instance: Instance) -> str:
        for rule in self.__rules:
            if (covers(rule.premise, instance)):
                return rule.label
        return self.__default

    def to_lines(self) -> list[str]:
        lines = [rule.to_line() for rule in self.__rules]
        lines.append(f"default: {self.__default}")
        return lines
