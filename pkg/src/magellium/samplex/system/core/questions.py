from dataclasses import dataclass, field

from magellium.samplex.system.common.digests import digest_lines
from magellium.samplex.system.common.errors import CoverageError, MembershipError, TheoryMismatchError
from magellium.samplex.system.core.classifiers import Classifier
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.theories import Instance, Theory


@dataclass(frozen=True, eq=False)
class Question:
    """A target instance of a dataset, to be explained under a classifier.

    Build it through :func:`make_question`, which validates it. ``labels``
    holds the classifier's label of every dataset instance, in dataset order.
    """
    theory: Theory
    classifier: Classifier
    dataset: Dataset
    target: Instance
    label: str = field(init=False)
    labels: tuple[str, ...] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "label", self.classifier.predict(self.target))
        object.__setattr__(self, "labels", tuple(self.classifier.predict(instance) for instance in self.dataset))

    def digest(self) -> str:
        lines = [self.dataset.digest(), self.classifier.digest_on(self.dataset), self.target.to_text()]
        return digest_lines(lines)

    def with_dataset(self, dataset: Dataset) -> "Question":
        return make_question(self.theory, self.classifier, dataset, self.target)

    def with_target(self, target: Instance) -> "Question":
        return make_question(self.theory, self.classifier, self.dataset, target)


def make_question(theory: Theory, classifier: Classifier, dataset: Dataset, target: Instance) -> Question:
    if (dataset.theory != theory or classifier.theory != theory or target.theory != theory):
        raise TheoryMismatchError("question components belong to different theories")
    if (target not in dataset):
        raise MembershipError("target instance is not in the dataset", target=target.to_text())
    for instance in dataset:
        if (not classifier.is_defined(instance)):
            raise CoverageError("classifier is undefined on a dataset instance", instance=instance.to_text())
    return Question(theory, classifier, dataset, target)
