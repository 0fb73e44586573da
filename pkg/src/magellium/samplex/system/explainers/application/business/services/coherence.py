"""Coherent sets, envelopes and the irrefutable explainer.

Two pooled explanations conflict when their union is consistent and they
carry different class labels. The irrefutable envelope keeps the pooled
explanations that conflict with nothing; ``is_irrefutable`` decides
membership in it without building the pool, by testing one canonical
candidate per opposing dataset instance.
"""
from itertools import combinations
from typing import Iterable, Sequence

from magellium.samplex.system.common.errors import ContractError, check_cap
from magellium.samplex.system.common.logger import LoggerFactory
from magellium.samplex.system.common.settings import DEFAULT_CAP
from magellium.samplex.system.core.classifiers import Classifier
from magellium.samplex.system.core.counters import ScanCounter
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.decision_lists import DecisionListClassifier, DecisionRule
from magellium.samplex.system.core.envelopes import (
    CoherenceVerdict,
    DwaxpPool,
    Envelope,
    EnvelopeCondition,
    EnvelopeVerdict,
)
from magellium.samplex.system.core.explanations import Explanation, ExplanationSet
from magellium.samplex.system.core.questions import Question, make_question
from magellium.samplex.system.core.theories import Instance, PartialAssignment, covers, union_consistent
from magellium.samplex.system.explainers.application.business.services.abductive import (
    all_dwaxp,
    deletion_sequence,
    dwaxp_verdict,
    refuting_instance,
)


LOGGER = LoggerFactory.get_logger(__name__)


def _labelled(dataset: Dataset, classifier: Classifier) -> list[tuple[Instance, str]]:
    return [(instance, classifier.predict(instance)) for instance in dataset]


def is_coherent_set(
    members: Iterable[PartialAssignment], dataset: Dataset, classifier: Classifier
) -> CoherenceVerdict:
    ordered = sorted(set(members), key=lambda member: member.sort_key)
    labelled = _labelled(dataset, classifier)
    covered: dict[PartialAssignment, list[tuple[Instance, str]]] = {
        member: [(instance, label) for instance, label in labelled if covers(member, instance)] for member in ordered
    }
    pairs = list(combinations(ordered, 2)) + [(member, member) for member in ordered]
    for first, second in pairs:
        if (not union_consistent(first, second)):
            continue
        for left, left_label in covered[first]:
            for right, right_label in covered[second]:
                if (left_label != right_label):
                    return CoherenceVerdict(False, first, second, left, right)
    return CoherenceVerdict(True)


def is_envelope(
    members: Iterable[PartialAssignment], dataset: Dataset, classifier: Classifier
) -> EnvelopeVerdict:
    candidates = list(members)
    coherence = is_coherent_set(candidates, dataset, classifier)
    if (not coherence):
        return EnvelopeVerdict(
            False,
            EnvelopeCondition.COHERENCE,
            f"{coherence.first.to_text()} / {coherence.second.to_text()}",
        )
    labelled = _labelled(dataset, classifier)
    for member in candidates:
        explained = any(
            covers(member, instance)
            and refuting_instance(dataset.instances, [label for _, label in labelled], member, label) is None
            for instance, label in labelled
        )
        if (not explained):
            return EnvelopeVerdict(False, EnvelopeCondition.MEMBERSHIP, member.to_text())
    for instance in dataset:
        if (not any(covers(member, instance) for member in candidates)):
            return EnvelopeVerdict(False, EnvelopeCondition.COVERAGE, instance.to_text())
    return EnvelopeVerdict(True)


def make_envelope(members: Iterable[PartialAssignment], dataset: Dataset, classifier: Classifier) -> Envelope:
    candidates = list(members)
    verdict = is_envelope(candidates, dataset, classifier)
    if (not verdict):
        raise ContractError(
            f"not an envelope: {verdict.failed.value} fails",
            condition=verdict.failed.value,
            witness=verdict.witness,
        )
    return Envelope(
        ExplanationSet(candidates, explainer="envelope"),
        dataset_digest=dataset.digest(),
        classifier_digest=classifier.digest_on(dataset),
    )


def coherent_from_envelope(envelope: Envelope, question: Question) -> ExplanationSet:
    if (envelope.dataset_digest != question.dataset.digest()
            or envelope.classifier_digest != question.classifier.digest_on(question.dataset)):
        raise ContractError("envelope was not built for this dataset and classifier")
    return ExplanationSet(
        (member for member in envelope if covers(member, question.target)),
        explainer="Lco",
        question_digest=question.digest(),
    )


def build_dwaxp_pool(dataset: Dataset, classifier: Classifier, cap: int = DEFAULT_CAP) -> DwaxpPool:
    labels: dict[PartialAssignment, str] = {}
    for instance in dataset:
        question = make_question(dataset.theory, classifier, dataset, instance)
        for explanation in all_dwaxp(question, cap):
            labels[explanation] = question.label
    LOGGER.debug("dwAXp pool of %d explanations over %d instances", len(labels), dataset.m)
    return DwaxpPool(ExplanationSet(labels, explainer="pool", labels=labels), labels)


def conflicting(first: PartialAssignment, second: PartialAssignment, pool: DwaxpPool) -> bool:
    return pool.label_of(first) != pool.label_of(second) and union_consistent(first, second)


def _envelope_of(members: Iterable[PartialAssignment], dataset: Dataset, classifier: Classifier, pool: DwaxpPool) -> Envelope:
    members = list(members)
    return Envelope(
        ExplanationSet(members, explainer="envelope", labels={member: pool.label_of(member) for member in members}),
        dataset_digest=dataset.digest(),
        classifier_digest=classifier.digest_on(dataset),
    )


def irr_envelope(dataset: Dataset, classifier: Classifier, cap: int = DEFAULT_CAP) -> Envelope:
    pool = build_dwaxp_pool(dataset, classifier, cap)
    members = list(pool)
    kept = [member for member in members if not any(conflicting(member, other, pool) for other in members)]
    return _envelope_of(kept, dataset, classifier, pool)


def is_irrefutable(question: Question, explanation: PartialAssignment, counter: ScanCounter | None = None) -> bool:
    if (not dwaxp_verdict(question, explanation, counter).holds):
        return False
    target = question.target
    instances = question.dataset.instances
    everything = range(question.theory.n)
    for other, other_label in zip(instances, question.labels):
        if (other_label == question.label):
            continue
        if (counter is not None):
            counter.candidate_tests += 1
        dropped = {
            feature for feature in explanation.features if target.values[feature] != other.values[feature]
        }
        candidate = other.restricted_to(feature for feature in everything if feature not in dropped)
        if (refuting_instance(instances, question.labels, candidate, other_label, counter) is None):
            return False
    return True


def lir_explain(question: Question, cap: int = DEFAULT_CAP) -> ExplanationSet:
    envelope = irr_envelope(question.dataset, question.classifier, cap)
    return ExplanationSet(
        (member for member in envelope if covers(member, question.target)),
        explainer="Lir",
        question_digest=question.digest(),
    )


def find_minimal_irrefutable(question: Question, deletion_order: Sequence[int] | None = None) -> Explanation:
    explanation: PartialAssignment = question.target.as_assignment()
    for feature in deletion_sequence(question.theory.n, deletion_order):
        if (explanation.values[feature] is None):
            continue
        candidate = explanation.without(feature)
        if (is_irrefutable(question, candidate)):
            explanation = candidate
    return explanation


def _maximal_independent_sets(nodes: list[PartialAssignment], neighbours: dict[PartialAssignment, set[PartialAssignment]]) -> list[set[PartialAssignment]]:
    """Bron-Kerbosch with pivoting on the complement of the conflict graph."""
    found: list[set[PartialAssignment]] = []
    universe = set(nodes)

    def compatible(node: PartialAssignment) -> set[PartialAssignment]:
        return universe - neighbours[node] - {node}

    def expand(chosen: set[PartialAssignment], candidates: set[PartialAssignment], excluded: set[PartialAssignment]) -> None:
        if (not candidates and not excluded):
            found.append(chosen)
            return
        pivot = max(candidates | excluded, key=lambda node: len(compatible(node) & candidates))
        for node in sorted(candidates - compatible(pivot), key=lambda member: member.sort_key):
            expand(chosen | {node}, candidates & compatible(node), excluded & compatible(node))
            candidates = candidates - {node}
            excluded = excluded | {node}

    expand(set(), set(nodes), set())
    return found


def maximal_envelopes(dataset: Dataset, classifier: Classifier, cap: int = DEFAULT_CAP) -> list[Envelope]:
    """All subset-maximal envelopes. Exponential: meant as an oracle on tiny inputs."""
    pool = build_dwaxp_pool(dataset, classifier, cap)
    members = list(pool)
    check_cap("envelope search over pool subsets", 2 ** len(members), cap)
    neighbours = {
        member: {other for other in members if other != member and conflicting(member, other, pool)}
        for member in members
    }
    envelopes = [_envelope_of(chosen, dataset, classifier, pool) for chosen in _maximal_independent_sets(members, neighbours)]
    return sorted(envelopes, key=lambda envelope: [member.sort_key for member in envelope])


def envelope_catalogue(dataset: Dataset, classifier: Classifier, cap: int = DEFAULT_CAP) -> list[Envelope]:
    """Every envelope, by size then canonical order. Exponential in the pool size."""
    pool = build_dwaxp_pool(dataset, classifier, cap)
    members = list(pool)
    check_cap("envelope catalogue over pool subsets", 2 ** len(members), cap)
    catalogue: list[Envelope] = []
    for size in range(1, len(members) + 1):
        for chosen in combinations(members, size):
            if (any(conflicting(first, second, pool) for first, second in combinations(chosen, 2))):
                continue
            if (all(any(covers(member, instance) for member in chosen) for instance in dataset)):
                catalogue.append(_envelope_of(chosen, dataset, classifier, pool))
    return catalogue


def greedy_envelope(dataset: Dataset, classifier: Classifier, cap: int = DEFAULT_CAP) -> Envelope:
    """Starts from the dataset and adds pooled explanations in canonical order while coherent."""
    pool = build_dwaxp_pool(dataset, classifier, cap)
    chosen: list[PartialAssignment] = [instance.as_assignment() for instance in dataset]
    for member in pool:
        if (member in chosen):
            continue
        if (not any(conflicting(member, other, pool) for other in chosen)):
            chosen.append(member)
    return _envelope_of(chosen, dataset, classifier, pool)


def sigma_from_envelope(envelope: Envelope, dataset: Dataset, classifier: Classifier) -> DecisionListClassifier:
    if (envelope.dataset_digest != dataset.digest() or envelope.classifier_digest != classifier.digest_on(dataset)):
        raise ContractError("envelope was not built for this dataset and classifier")
    verdict = is_envelope(list(envelope), dataset, classifier)
    if (not verdict):
        raise ContractError(f"not an envelope: {verdict.failed.value} fails", witness=verdict.witness)
    labels = {member: classifier.predict(next(instance for instance in dataset if covers(member, instance))) for member in envelope}
    rules: list[DecisionRule] = []
    for member in envelope:
        # a member refining a same-label member never decides anything on its own
        if (any(other != member and labels[other] == labels[member] and covers(other, member) for other in envelope)):
            continue
        rules.append(DecisionRule(member, labels[member]))
    LOGGER.debug(f"decision list keeps {len(rules)} of {len(envelope)} envelope members")
    return DecisionListClassifier(dataset.theory, rules, dataset.theory.classes[0])


def dataset_envelope(dataset: Dataset, classifier: Classifier) -> Envelope:
    return make_envelope((instance.as_assignment() for instance in dataset), dataset, classifier)
