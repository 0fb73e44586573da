"""Executable forms of the explainer axioms.

Local axioms are decided question by question. Coherence compares two
questions on the same dataset and classifier; Monotonicity and
Counter-Monotonicity compare a question with the same question asked on a
larger dataset. Every violation is returned as a :class:`Counterexample`
whose ``replay`` re-evaluates the raw condition on the stored witnesses.
"""
from dataclasses import dataclass, field
from typing import AbstractSet, Any, Callable

from magellium.samplex.system.common.errors import ValidationError
from magellium.samplex.system.core.axioms import AxiomId, Criterion, PropertyId
from magellium.samplex.system.core.questions import Question
from magellium.samplex.system.core.theories import Instance, PartialAssignment, covers, union_consistent
from magellium.samplex.system.explainers.application.business.services.abductive import (
    refuting_instance,
    subsets_of,
)


Explanations = AbstractSet[PartialAssignment]


@dataclass(frozen=True)
class Counterexample:
    criterion: Criterion
    questions: tuple[Question, ...]
    explanations: tuple[PartialAssignment, ...] = ()
    witnesses: tuple[Instance, ...] = ()
    outputs: tuple[frozenset[PartialAssignment], ...] = ()
    detail: str = ""
    replay_check: Callable[[], bool] | None = field(default=None, compare=False, repr=False)

    def replay(self) -> bool:
        """True when the stored witnesses still violate the condition."""
        return True if self.replay_check is None else self.replay_check()

    def to_document(self) -> dict[str, Any]:
        return {
            "criterion": self.criterion.value,
            "detail": self.detail,
            "questions": [
                {"target": question.target.to_text(), "label": question.label, "dataset": question.dataset.digest(),
                 "instances": [instance.to_text() for instance in question.dataset]}
                for question in self.questions
            ],
            "explanations": [explanation.to_text() for explanation in self.explanations],
            "witnesses": [witness.to_text() for witness in self.witnesses],
        }


def _refuted_in(question: Question, explanation: PartialAssignment) -> Instance | None:
    return refuting_instance(question.dataset.instances, question.labels, explanation, question.label)


def _sorted(explanations: Explanations) -> list[PartialAssignment]:
    return sorted(explanations, key=lambda member: member.sort_key)


def feasibility_violation(question: Question, explanations: Explanations) -> Counterexample | None:
    for explanation in _sorted(explanations):
        if (not covers(explanation, question.target)):
            return Counterexample(
                AxiomId.FEASIBILITY, (question,), (explanation,),
                detail="explanation is not a subset of the target",
                replay_check=lambda: not covers(explanation, question.target),
            )
    return None


def validity_violation(question: Question, explanations: Explanations) -> Counterexample | None:
    for explanation in _sorted(explanations):
        witness = _refuted_in(question, explanation)
        if (witness is not None):
            return Counterexample(
                AxiomId.VALIDITY, (question,), (explanation,), (witness,),
                detail="a dataset instance covered by the explanation has another class",
                replay_check=lambda: covers(explanation, witness) and question.classifier.predict(witness) != question.label,
            )
    return None


def success_violation(question: Question, explanations: Explanations) -> Counterexample | None:
    if (len(explanations) == 0):
        return Counterexample(AxiomId.SUCCESS, (question,), detail="no explanation returned")
    return None


def _irreducibility_violation(
    criterion: AxiomId, question: Question, scope: Question, explanations: Explanations
) -> Counterexample | None:
    for explanation in _sorted(explanations):
        for literal in explanation.literals:
            reduced = explanation.without(literal.feature)
            if (_refuted_in(scope, reduced) is None):
                return Counterexample(
                    criterion, (question,), (explanation, reduced),
                    detail=f"literal {literal.to_text(question.theory)} can be dropped",
                    replay_check=lambda: _refuted_in(scope, reduced) is None,
                )
    return None


def _completeness_violation(
    criterion: AxiomId, question: Question, scope: Question, explanations: Explanations, cap: int
) -> Counterexample | None:
    for candidate in subsets_of(question.target, cap):
        if (candidate in explanations):
            continue
        if (_refuted_in(scope, candidate) is None):
            return Counterexample(
                criterion, (question,), (candidate,),
                detail="an unrefuted subset of the target is missing",
                replay_check=lambda: candidate not in explanations and _refuted_in(scope, candidate) is None,
            )
    return None


def fidelity_violation(question: Question, scope: Question, explanations: Explanations, cap: int) -> Counterexample | None:
    violation = _completeness_violation(AxiomId.STRONG_COMPLETENESS, question, scope, explanations, cap)
    if (violation is None):
        return None
    return Counterexample(
        PropertyId.FIDELITY, violation.questions, violation.explanations,
        detail="a feature-space explanation is missing", replay_check=violation.replay_check,
    )


def local_violation(
    criterion: Criterion,
    question: Question,
    explanations: Explanations,
    whole: Question | None = None,
    cap: int = 2 ** 20,
) -> Counterexample | None:
    """Checks one local criterion on one question; ``whole`` is the question asked on the feature space."""
    if (criterion.needs_feature_space and whole is None):
        raise ValidationError(f"{criterion.value} needs the feature space of the classifier")
    if (criterion == AxiomId.FEASIBILITY):
        return feasibility_violation(question, explanations)
    if (criterion == AxiomId.VALIDITY):
        return validity_violation(question, explanations)
    if (criterion == AxiomId.SUCCESS):
        return success_violation(question, explanations)
    if (criterion == AxiomId.IRREDUCIBILITY):
        return _irreducibility_violation(AxiomId.IRREDUCIBILITY, question, question, explanations)
    if (criterion == AxiomId.STRONG_IRREDUCIBILITY):
        return _irreducibility_violation(AxiomId.STRONG_IRREDUCIBILITY, question, whole, explanations)
    if (criterion == AxiomId.COMPLETENESS):
        return _completeness_violation(AxiomId.COMPLETENESS, question, question, explanations, cap)
    if (criterion == AxiomId.STRONG_COMPLETENESS):
        return _completeness_violation(AxiomId.STRONG_COMPLETENESS, question, whole, explanations, cap)
    if (criterion == PropertyId.FIDELITY):
        return fidelity_violation(question, whole, explanations, cap)
    raise ValidationError(f"{criterion.value} is not decided question by question")


def coherence_violation(
    first: Question, first_output: Explanations, second: Question, second_output: Explanations
) -> Counterexample | None:
    if (first.label == second.label):
        return None
    for left in _sorted(first_output):
        for right in _sorted(second_output):
            if (union_consistent(left, right)):
                return Counterexample(
                    AxiomId.COHERENCE, (first, second), (left, right),
                    detail="explanations of differently classified targets are consistent",
                    replay_check=lambda: first.label != second.label and union_consistent(left, right),
                )
    return None


def _inclusion_violation(
    criterion: AxiomId, smaller: Question, bigger: Question, contained: Explanations, container: Explanations,
) -> Counterexample | None:
    for explanation in _sorted(contained):
        if (explanation not in container):
            return Counterexample(
                criterion, (smaller, bigger), (explanation,),
                outputs=(frozenset(contained), frozenset(container)),
                detail="explanation lost when the dataset changes",
                replay_check=lambda: smaller.dataset.issubset(bigger.dataset) and explanation not in container,
            )
    return None


def monotonicity_violation(
    smaller: Question, smaller_output: Explanations, bigger: Question, bigger_output: Explanations
) -> Counterexample | None:
    return _inclusion_violation(AxiomId.MONOTONICITY, smaller, bigger, smaller_output, bigger_output)


def counter_monotonicity_violation(
    smaller: Question, smaller_output: Explanations, bigger: Question, bigger_output: Explanations
) -> Counterexample | None:
    return _inclusion_violation(AxiomId.COUNTER_MONOTONICITY, smaller, bigger, bigger_output, smaller_output)
