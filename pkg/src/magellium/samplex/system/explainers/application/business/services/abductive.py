"""Weak and concise abductive explanations, scoped to a dataset or to the feature space.

The dataset-scoped membership test is a single pass over the dataset; every
other operation here is built on it. Feature-space variants substitute the
whole feature space for the dataset, so they are guarded by a cap.
"""
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from magellium.samplex.system.common.errors import ValidationError, check_cap
from magellium.samplex.system.common.settings import DEFAULT_CAP
from magellium.samplex.system.core.classifiers import Classifier
from magellium.samplex.system.core.counters import ScanCounter
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.explanations import DwaxpVerdict, Explanation, ExplanationSet
from magellium.samplex.system.core.questions import Question, make_question
from magellium.samplex.system.core.theories import (
    Instance,
    PartialAssignment,
    covers,
    enumerate_feature_space,
)


def _covered(explanation: Sequence[int | None], instance: Sequence[int | None]) -> bool:
    for value, other in zip(explanation, instance):
        if (value is not None and value != other):
            return False
    return True


def refuting_instance(
    instances: Sequence[Instance],
    labels: Sequence[str],
    explanation: PartialAssignment,
    label: str,
    counter: ScanCounter | None = None,
) -> Instance | None:
    """First instance covered by ``explanation`` whose label differs from ``label``.

    Always examines every instance.
    """
    witness: Instance | None = None
    values = explanation.values
    for instance, instance_label in zip(instances, labels):
        if (counter is not None):
            counter.covers_checks += 1
        if (witness is None and instance_label != label and _covered(values, instance.values)):
            witness = instance
    return witness


def dwaxp_verdict(question: Question, explanation: PartialAssignment, counter: ScanCounter | None = None) -> DwaxpVerdict:
    if (not covers(explanation, question.target)):
        return DwaxpVerdict(False)
    witness = refuting_instance(question.dataset.instances, question.labels, explanation, question.label, counter)
    return DwaxpVerdict(witness is None, witness)


def is_dwaxp(question: Question, explanation: PartialAssignment, counter: ScanCounter | None = None) -> bool:
    return dwaxp_verdict(question, explanation, counter).holds


def subsets_of(assignment: PartialAssignment, cap: int = DEFAULT_CAP) -> Iterator[PartialAssignment]:
    """Every subset of ``assignment``, by size then lexicographically on feature indices."""
    features = sorted(assignment.features)
    check_cap("subset enumeration", 2 ** len(features), cap)

    def generate() -> Iterator[PartialAssignment]:
        for size in range(len(features) + 1):
            for chosen in combinations(features, size):
                yield assignment.restricted_to(chosen)

    return generate()


def minimal_elements(members: Iterable[PartialAssignment]) -> list[PartialAssignment]:
    """Subset-minimal members, in input order."""
    pool = list(members)
    return [
        member
        for member in pool
        if not any(other != member and covers(other, member) for other in pool)
    ]


def all_dwaxp(question: Question, cap: int = DEFAULT_CAP) -> ExplanationSet:
    found = [subset for subset in subsets_of(question.target, cap) if is_dwaxp(question, subset)]
    return ExplanationSet(found, explainer="Ldw", question_digest=question.digest())


def all_caxp(question: Question, cap: int = DEFAULT_CAP) -> ExplanationSet:
    weak = all_dwaxp(question, cap)
    return ExplanationSet(minimal_elements(weak), explainer="Ldc", question_digest=weak.question_digest)


def deletion_sequence(n: int, deletion_order: Sequence[int] | None) -> tuple[int, ...]:
    if (deletion_order is None):
        return tuple(range(n))
    order = tuple(deletion_order)
    if (sorted(order) != list(range(n))):
        raise ValidationError("deletion order must be a permutation of the feature indices", order=list(order))
    return order


def find_caxp(
    question: Question,
    deletion_order: Sequence[int] | None = None,
    counter: ScanCounter | None = None,
) -> Explanation:
    """Greedy deletion from the target: drop a literal whenever the rest stays a dwAXp."""
    explanation: PartialAssignment = question.target.as_assignment()
    for feature in deletion_sequence(question.theory.n, deletion_order):
        candidate = explanation.without(feature)
        if (is_dwaxp(question, candidate, counter)):
            explanation = candidate
    return explanation


def feature_space_question(question: Question, cap: int = DEFAULT_CAP) -> Question:
    """The same target and classifier, with the whole feature space as dataset."""
    space = Dataset(question.theory, enumerate_feature_space(question.theory, cap))
    return make_question(question.theory, question.classifier, space, question.target)


def feature_space_dwaxps(classifier: Classifier, target: Instance, cap: int = DEFAULT_CAP) -> list[PartialAssignment]:
    theory = classifier.theory
    check_cap("subset enumeration", 2 ** theory.n, cap)
    space = Dataset(theory, enumerate_feature_space(theory, cap))
    whole = make_question(theory, classifier, space, target)
    return [subset for subset in subsets_of(target, cap) if is_dwaxp(whole, subset)]


def lw_all(question: Question, cap: int = DEFAULT_CAP) -> ExplanationSet:
    found = feature_space_dwaxps(question.classifier, question.target, cap)
    return ExplanationSet(found, explainer="Lw", question_digest=question.digest())


def lc_all(question: Question, cap: int = DEFAULT_CAP) -> ExplanationSet:
    found = feature_space_dwaxps(question.classifier, question.target, cap)
    return ExplanationSet(minimal_elements(found), explainer="Lc", question_digest=question.digest())


def trivial_explain(question: Question) -> ExplanationSet:
    return ExplanationSet([question.target.as_assignment()], explainer="Ltr", question_digest=question.digest())
