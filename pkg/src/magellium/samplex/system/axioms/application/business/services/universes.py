"""Finite families of questions over which axioms are checked.

A universe is a list of contexts, each one a (classifier, dataset) pair of a
theory. Questions are the context targets; Coherence pairs stay inside a
context; Monotonicity pairs join two contexts of the same named classifier
whose datasets are nested.
"""
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator

from magellium.samplex.system.common.digests import digest_lines
from magellium.samplex.system.common.errors import UniverseShapeError
from magellium.samplex.system.common.settings import DEFAULT_CAP
from magellium.samplex.system.core.axioms import Criterion, ExplainerId
from magellium.samplex.system.core.classifiers import Classifier, TableClassifier
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.questions import Question, make_question
from magellium.samplex.system.core.theories import Instance, Theory, enumerate_feature_space


@dataclass(eq=False)
class UniverseContext:
    name: str
    classifier_name: str
    classifier: Classifier
    dataset: Dataset
    feature_space: bool = False
    surrogate: Classifier | None = None
    targets: tuple[Instance, ...] | None = None
    _questions: list[Question] | None = field(default=None, init=False, repr=False)
    _whole: Dataset | None = field(default=None, init=False, repr=False)

    @property
    def theory(self) -> Theory:
        return self.dataset.theory

    def questions(self) -> list[Question]:
        if (self._questions is None):
            targets = self.targets if self.targets is not None else self.dataset.instances
            self._questions = [make_question(self.theory, self.classifier, self.dataset, target) for target in targets]
        return self._questions

    def whole(self, cap: int = DEFAULT_CAP) -> Dataset:
        if (not self.feature_space):
            raise UniverseShapeError(f"context '{self.name}' has no feature-space access")
        if (self._whole is None):
            self._whole = Dataset(self.theory, enumerate_feature_space(self.theory, cap))
        return self._whole

    def whole_question(self, question: Question, cap: int = DEFAULT_CAP) -> Question:
        return make_question(self.theory, self.classifier, self.whole(cap), question.target)


@dataclass(frozen=True)
class QuestionRef:
    context: UniverseContext
    question: Question


@dataclass(frozen=True)
class Universe:
    name: str
    contexts: tuple[UniverseContext, ...]
    refutes: tuple[tuple[ExplainerId, Criterion], ...] = ()
    description: str = ""
    certifies: tuple[str, ...] = ()

    def __post_init__(self):
        for context in self.contexts:
            for target in (context.targets or ()):
                if (target not in context.dataset):
                    raise UniverseShapeError(f"target {target.to_text()} of '{context.name}' is not in its dataset")

    def questions(self) -> Iterator[QuestionRef]:
        for context in self.contexts:
            for question in context.questions():
                yield QuestionRef(context, question)

    def coherence_pairs(self) -> Iterator[tuple[QuestionRef, QuestionRef]]:
        for context in self.contexts:
            for first, second in combinations(context.questions(), 2):
                if (first.label != second.label):
                    yield QuestionRef(context, first), QuestionRef(context, second)

    def monotonicity_pairs(self) -> Iterator[tuple[QuestionRef, QuestionRef]]:
        """(smaller, bigger) questions with the same classifier and target, smaller dataset included in the bigger."""
        for smaller in self.contexts:
            for bigger in self.contexts:
                if (smaller.classifier_name != bigger.classifier_name or not smaller.dataset.issubset(bigger.dataset)):
                    continue
                targets = {question.target: question for question in bigger.questions()}
                for question in smaller.questions():
                    other: Question | None = targets.get(question.target)
                    if (other is not None):
                        yield QuestionRef(smaller, question), QuestionRef(bigger, other)

    def refutes_pair(self, explainer: ExplainerId, criterion: Criterion) -> bool:
        return (explainer, criterion) in self.refutes

    def size(self) -> int:
        return sum(len(context.questions()) for context in self.contexts)

    def digest(self) -> str:
        lines = [self.name]
        for context in self.contexts:
            lines.append(context.name)
            lines.append(context.dataset.digest())
            lines.append(context.classifier.digest_on(context.dataset))
        return digest_lines(lines)


def binary_tables(theory: Theory, cap: int = DEFAULT_CAP) -> Iterator[TableClassifier]:
    """Every total classifier of the theory, labels varying fastest on the last instance."""
    space = list(enumerate_feature_space(theory, cap))
    for labels in product(theory.classes, repeat=len(space)):
        yield TableClassifier(theory, dict(zip(space, labels)))


def nonempty_datasets(theory: Theory, cap: int = DEFAULT_CAP) -> Iterator[Dataset]:
    space = list(enumerate_feature_space(theory, cap))
    for size in range(1, len(space) + 1):
        for chosen in combinations(space, size):
            yield Dataset(theory, chosen)


def desk_universe(n_features: int = 2, classes: tuple[str, ...] = ("0", "1")) -> Universe:
    """Every total classifier, every nonempty dataset and every target of a small binary theory."""
    theory = Theory.binary(n_features, classes)
    datasets = list(nonempty_datasets(theory))
    contexts: list[UniverseContext] = []
    for index, classifier in enumerate(binary_tables(theory)):
        name = f"k{index:02d}"
        for dataset in datasets:
            contexts.append(UniverseContext(
                name=f"{name}/{';'.join(instance.to_text() for instance in dataset)}",
                classifier_name=name,
                classifier=classifier,
                dataset=dataset,
                feature_space=True,
            ))
    return Universe(name=f"desk-{n_features}x{len(classes)}", contexts=tuple(contexts))


def context_of(
    name: str,
    classifier_name: str,
    classifier: Classifier,
    dataset: Dataset,
    cap: int = DEFAULT_CAP,
    surrogate: Classifier | None = None,
    targets: tuple[Instance, ...] | None = None,
) -> UniverseContext:
    """A context whose feature-space access is granted when the classifier is total under the cap."""
    total = True
    if (isinstance(classifier, TableClassifier)):
        total = dataset.theory.feature_space_size() <= cap and classifier.is_total(cap)
    elif (dataset.theory.feature_space_size() > cap):
        total = False
    return UniverseContext(name, classifier_name, classifier, dataset, total, surrogate, targets)


def single_context_universe(name: str, classifier: Classifier, dataset: Dataset, cap: int = DEFAULT_CAP) -> Universe:
    return Universe(name=name, contexts=(context_of(name, "k", classifier, dataset, cap),))
