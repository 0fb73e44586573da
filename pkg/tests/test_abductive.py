from itertools import permutations

import pytest
from hypothesis import given

from magellium.samplex.system.common.errors import CapacityError, ValidationError
from magellium.samplex.system.core.classifiers import CallableClassifier
from magellium.samplex.system.core.counters import ScanCounter
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.questions import make_question
from magellium.samplex.system.core.theories import PartialAssignment, Theory, covers, enumerate_feature_space
from magellium.samplex.system.explainers.application.business.services.abductive import (
    all_caxp,
    all_dwaxp,
    deletion_sequence,
    dwaxp_verdict,
    feature_space_question,
    find_caxp,
    is_dwaxp,
    lc_all,
    lw_all,
    minimal_elements,
    subsets_of,
    trivial_explain,
)

from tests.conftest import question_on, questions


def parse_all(theory, *texts):
    return {theory.parse_assignment(text) for text in texts}


class TestTwoRows:

    def test_dataset_weak_explanations(self, two_rows):
        question = question_on(two_rows, 0)
        assert question.label == "0"
        assert all_dwaxp(question) == parse_all(two_rows.theory, "f2=0", "f1=0,f2=0")

    def test_dataset_concise_explanations(self, two_rows):
        question = question_on(two_rows, 0)
        assert all_caxp(question) == parse_all(two_rows.theory, "f2=0")
        assert find_caxp(question) == two_rows.theory.parse_assignment("f2=0")

    def test_empty_and_refuted_candidates(self, two_rows):
        question = question_on(two_rows, 0)
        theory = two_rows.theory
        verdict = dwaxp_verdict(question, PartialAssignment.empty(theory))
        assert not verdict.holds
        assert verdict.witness == theory.instance(["0", "1"])
        assert not is_dwaxp(question, theory.parse_assignment("f1=0"))
        # not a subset of the target
        assert not is_dwaxp(question, theory.parse_assignment("f2=1"))

    def test_feature_space_explanations(self, two_rows_xor):
        question = question_on(two_rows_xor, 0)
        target = {question.target.as_assignment()}
        assert lw_all(question) == target
        assert lc_all(question) == target
        assert trivial_explain(question) == target

    def test_feature_space_needs_a_total_classifier(self, two_rows):
        with pytest.raises(ValidationError):
            lw_all(question_on(two_rows, 0))


def test_three_rows_explanations(three_rows):
    theory = three_rows.theory
    first = question_on(three_rows, 0)
    assert all_dwaxp(first) == parse_all(theory, "f1=0", "f2=0", "f1=0,f2=0")
    assert all_caxp(first) == parse_all(theory, "f1=0", "f2=0")
    third = question_on(three_rows, 2)
    assert all_caxp(third) == parse_all(theory, "f2=1")


def test_concise_explanation_of_the_first_feature_classifier():
    theory = Theory.binary(2)
    classifier = CallableClassifier(theory, lambda instance: theory.domains[0][instance.values[0]])
    space = Dataset(theory, enumerate_feature_space(theory, 4))
    question = make_question(theory, classifier, space, theory.instance(["0", "0"]))
    assert lc_all(question) == parse_all(theory, "f1=0")
    assert feature_space_question(question).dataset == space


def test_deletion_order_changes_the_concise_explanation(three_rows):
    question = question_on(three_rows, 0)
    theory = three_rows.theory
    assert find_caxp(question, (0, 1)) == theory.parse_assignment("f2=0")
    assert find_caxp(question, (1, 0)) == theory.parse_assignment("f1=0")


def test_deletion_order_must_be_a_permutation():
    assert deletion_sequence(3, None) == (0, 1, 2)
    assert deletion_sequence(3, [2, 0, 1]) == (2, 0, 1)
    with pytest.raises(ValidationError):
        deletion_sequence(3, [0, 1])
    with pytest.raises(ValidationError):
        deletion_sequence(2, [0, 0])


def test_subsets_are_ordered_by_size_and_capped():
    theory = Theory.binary(3)
    target = theory.instance(["1", "0", "1"])
    subsets = [subset.to_text() for subset in subsets_of(target)]
    assert subsets[0] == "{}"
    assert subsets[1:4] == ["f1=1", "f2=0", "f3=1"]
    assert subsets[-1] == "f1=1,f2=0,f3=1"
    with pytest.raises(CapacityError):
        subsets_of(target, 7)


def test_minimal_elements_keep_input_order():
    theory = Theory.binary(3)
    members = [theory.parse_assignment(text) for text in ("f1=0,f2=0", "f3=1", "f1=0", "f2=0,f3=1")]
    assert minimal_elements(members) == [members[1], members[2]]


def test_membership_scan_examines_every_instance(three_rows):
    question = question_on(three_rows, 0)
    counter = ScanCounter()
    is_dwaxp(question, PartialAssignment.empty(three_rows.theory), counter)
    assert counter.covers_checks == three_rows.dataset.m
    find_caxp(question, counter=counter)
    assert counter.covers_checks == three_rows.dataset.m * (1 + three_rows.theory.n)
    counter.reset()
    assert (counter.covers_checks, counter.candidate_tests) == (0, 0)


def test_scan_work_doubles_with_the_dataset():
    theory = Theory.binary(4)
    classifier = CallableClassifier(theory, lambda instance: str(sum(instance.values) % 2))
    space = list(enumerate_feature_space(theory, 16))
    counts = []
    for m in (4, 8):
        question = make_question(theory, classifier, Dataset(theory, space[:m]), space[0])
        counter = ScanCounter()
        is_dwaxp(question, question.target.as_assignment(), counter)
        find_caxp(question, counter=counter)
        counts.append(counter.covers_checks)
    assert counts == [4 * (1 + theory.n), 8 * (1 + theory.n)]


@given(questions())
def test_weak_explanations_are_exactly_the_unrefuted_subsets(question):
    weak = all_dwaxp(question)
    for subset in subsets_of(question.target):
        refuted = any(
            covers(subset, instance) and label != question.label
            for instance, label in zip(question.dataset, question.labels)
        )
        assert (subset in weak) == (not refuted)
    assert question.target.as_assignment() in weak


@given(questions(max_features=4))
def test_greedy_concise_explanation_is_minimal_under_every_order(question):
    concise = all_caxp(question)
    for order in permutations(range(question.theory.n)):
        found = find_caxp(question, order)
        assert found in concise
        assert all(not is_dwaxp(question, found.without(feature)) for feature in found.features)


@given(questions())
def test_feature_space_explanations_are_dataset_explanations(question):
    weak = all_dwaxp(question)
    assert lw_all(question).issubset(weak)
    for explanation in lc_all(question):
        assert any(covers(concise, explanation) for concise in all_caxp(question))
