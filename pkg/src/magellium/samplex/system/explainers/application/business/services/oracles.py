"""Side-by-side runs of the polynomial or greedy operations and their brute-force counterparts.

Every comparison works on one (dataset, classifier) pair and counts the cases
checked and the cases where both sides disagree.
"""
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial
from typing import Any, Callable, Iterable

from magellium.samplex.system.common.errors import check_cap
from magellium.samplex.system.common.settings import Caps
from magellium.samplex.system.core.classifiers import Classifier
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.decision_trees import SplitCriterion
from magellium.samplex.system.core.questions import Question, make_question
from magellium.samplex.system.core.theories import covers, enumerate_feature_space
from magellium.samplex.system.explainers.application.business.services.abductive import (
    all_caxp,
    find_caxp,
    is_dwaxp,
    subsets_of,
)
from magellium.samplex.system.explainers.application.business.services.coherence import (
    greedy_envelope,
    irr_envelope,
    is_coherent_set,
    is_irrefutable,
    sigma_from_envelope,
)
from magellium.samplex.system.explainers.application.business.services.surrogate import (
    id3_fit,
    is_dwaxp_tree,
    lsu_explain,
)


IRREFUTABLE = "is_irrefutable vs envelope membership"
CONCISE = "find_caxp vs all_caxp"
TREE = "is_dwaxp_tree vs feature-space check"
ENVELOPE_SURROGATE = "sigma_from_envelope guarantees"
SURROGATE_COHERENCE = "Lsu coherence"

COMPARISONS: tuple[str, ...] = (IRREFUTABLE, CONCISE, TREE, ENVELOPE_SURROGATE, SURROGATE_COHERENCE)


@dataclass
class OracleComparison:
    name: str
    checked: int = 0
    mismatches: int = 0
    first_mismatch: str = ""

    def record(self, agrees: bool, describe: Callable[[], str]) -> None:
        self.checked += 1
        if (not agrees):
            self.mismatches += 1
            if (not self.first_mismatch):
                self.first_mismatch = describe()

    def merge(self, other: "OracleComparison") -> None:
        self.checked += other.checked
        self.mismatches += other.mismatches
        if (not self.first_mismatch):
            self.first_mismatch = other.first_mismatch

    def to_document(self) -> dict[str, Any]:
        document: dict[str, Any] = {
            "comparison": self.name,
            "checked": self.checked,
            "mismatches": self.mismatches,
        }
        if (self.first_mismatch):
            document["first_mismatch"] = self.first_mismatch
        return document


@dataclass
class OracleReport:
    subject: str
    contexts: int = 0
    comparisons: dict[str, OracleComparison] = field(
        default_factory=lambda: {name: OracleComparison(name) for name in COMPARISONS}
    )

    @property
    def mismatches(self) -> int:
        return sum(comparison.mismatches for comparison in self.comparisons.values())

    def to_document(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "contexts": self.contexts,
            "mismatches": self.mismatches,
            "comparisons": [comparison.to_document() for comparison in self.comparisons.values()],
        }


def _questions(dataset: Dataset, classifier: Classifier) -> list[Question]:
    return [make_question(dataset.theory, classifier, dataset, target) for target in dataset]


def compare_irrefutable(dataset: Dataset, classifier: Classifier, caps: Caps) -> OracleComparison:
    comparison = OracleComparison(IRREFUTABLE)
    envelope = irr_envelope(dataset, classifier, min(caps.subsets, caps.pool))
    for question in _questions(dataset, classifier):
        for subset in subsets_of(question.target, caps.subsets):
            comparison.record(
                is_irrefutable(question, subset) == (subset in envelope),
                lambda: f"{subset.to_text()} for {question.target.to_text()}",
            )
    return comparison


def compare_concise(dataset: Dataset, classifier: Classifier, caps: Caps) -> OracleComparison:
    comparison = OracleComparison(CONCISE)
    n = dataset.theory.n
    check_cap("deletion orders", factorial(n), caps.subsets)
    for question in _questions(dataset, classifier):
        minimal = all_caxp(question, caps.subsets)
        for order in permutations(range(n)):
            found = find_caxp(question, order)
            comparison.record(found in minimal, lambda: f"{found.to_text()} for {question.target.to_text()}")
    return comparison


def compare_tree(dataset: Dataset, classifier: Classifier, caps: Caps, criterion: SplitCriterion) -> OracleComparison:
    comparison = OracleComparison(TREE)
    theory = dataset.theory
    tree = id3_fit(dataset, classifier, criterion)
    space = Dataset(theory, enumerate_feature_space(theory, caps.feature_space))
    for target in dataset:
        whole = make_question(theory, tree, space, target)
        for subset in subsets_of(target, caps.subsets):
            comparison.record(
                is_dwaxp_tree(tree, target, subset) == is_dwaxp(whole, subset),
                lambda: f"{subset.to_text()} for {target.to_text()}",
            )
    return comparison


def compare_envelope_surrogate(dataset: Dataset, classifier: Classifier, caps: Caps) -> OracleComparison:
    """Both guarantees of the envelope decision list, for the irrefutable and the greedy envelope."""
    comparison = OracleComparison(ENVELOPE_SURROGATE)
    theory = dataset.theory
    cap = min(caps.subsets, caps.pool)
    space = Dataset(theory, enumerate_feature_space(theory, caps.feature_space))
    for envelope in (irr_envelope(dataset, classifier, cap), greedy_envelope(dataset, classifier, cap)):
        sigma = sigma_from_envelope(envelope, dataset, classifier)
        for instance in dataset:
            comparison.record(
                sigma.predict(instance) == classifier.predict(instance),
                lambda: f"decision list disagrees with the classifier on {instance.to_text()}",
            )
        for point in space:
            whole = make_question(theory, sigma, space, point)
            for member in envelope:
                if (covers(member, point)):
                    comparison.record(
                        is_dwaxp(whole, member),
                        lambda: f"{member.to_text()} is not explained by the decision list at {point.to_text()}",
                    )
    return comparison


def compare_surrogate_coherence(dataset: Dataset, classifier: Classifier, caps: Caps, criterion: SplitCriterion) -> OracleComparison:
    comparison = OracleComparison(SURROGATE_COHERENCE)
    tree = id3_fit(dataset, classifier, criterion)
    members = []
    for question in _questions(dataset, classifier):
        members.extend(lsu_explain(question, tree, caps.subsets))
    verdict = is_coherent_set(members, dataset, classifier)
    comparison.record(
        verdict.coherent,
        lambda: f"{verdict.first.to_text()} conflicts with {verdict.second.to_text()}",
    )
    return comparison


def compare_all(
    report: OracleReport,
    pairs: Iterable[tuple[Dataset, Classifier]],
    caps: Caps,
    criterion: SplitCriterion = SplitCriterion.GAIN_RATIO,
) -> OracleReport:
    """Runs every comparison on every pair. Tree and decision-list checks enumerate the feature space."""
    for dataset, classifier in pairs:
        theory = dataset.theory
        check_cap("oracle enumeration", dataset.m * 2 ** theory.n, caps.pool)
        report.contexts += 1
        report.comparisons[IRREFUTABLE].merge(compare_irrefutable(dataset, classifier, caps))
        report.comparisons[CONCISE].merge(compare_concise(dataset, classifier, caps))
        report.comparisons[SURROGATE_COHERENCE].merge(compare_surrogate_coherence(dataset, classifier, caps, criterion))
        check_cap("feature space", theory.feature_space_size(), caps.feature_space)
        report.comparisons[TREE].merge(compare_tree(dataset, classifier, caps, criterion))
        report.comparisons[ENVELOPE_SURROGATE].merge(compare_envelope_surrogate(dataset, classifier, caps))
    return report
