import pytest
from hypothesis import given

from magellium.samplex.system.common.errors import ContractError
from magellium.samplex.system.core.counters import ScanCounter
from magellium.samplex.system.core.envelopes import EnvelopeCondition
from magellium.samplex.system.core.questions import make_question
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.theories import covers, enumerate_feature_space
from magellium.samplex.system.explainers.application.business.services.abductive import all_dwaxp, is_dwaxp, subsets_of
from magellium.samplex.system.explainers.application.business.services.coherence import (
    build_dwaxp_pool,
    coherent_from_envelope,
    dataset_envelope,
    envelope_catalogue,
    find_minimal_irrefutable,
    greedy_envelope,
    irr_envelope,
    is_coherent_set,
    is_envelope,
    is_irrefutable,
    lir_explain,
    make_envelope,
    maximal_envelopes,
    sigma_from_envelope,
)

from tests.conftest import contexts, question_on


def parse_all(theory, *texts):
    return {theory.parse_assignment(text) for text in texts}


class TestTwoRows:

    def test_pool_and_irrefutable_envelope(self, two_rows):
        theory = two_rows.theory
        pool = build_dwaxp_pool(two_rows.dataset, two_rows.classifier)
        everything = parse_all(theory, "f2=0", "f1=0,f2=0", "f2=1", "f1=0,f2=1")
        assert set(pool) == everything
        assert pool.label_of(theory.parse_assignment("f2=1")) == "1"
        assert set(irr_envelope(two_rows.dataset, two_rows.classifier)) == everything

    def test_irrefutable_explanations_of_the_first_instance(self, two_rows):
        question = question_on(two_rows, 0)
        assert lir_explain(question) == parse_all(two_rows.theory, "f2=0", "f1=0,f2=0")

    def test_consistent_explanations_of_different_classes_are_incoherent(self, two_rows):
        theory = two_rows.theory
        verdict = is_coherent_set(parse_all(theory, "f1=0", "f2=0"), two_rows.dataset, two_rows.classifier)
        assert not verdict
        assert {verdict.first_witness, verdict.second_witness} == {theory.instance(["0", "0"]), theory.instance(["0", "1"])}

    def test_single_literal_envelope(self, two_rows):
        theory = two_rows.theory
        members = parse_all(theory, "f2=0", "f2=1")
        assert is_envelope(members, two_rows.dataset, two_rows.classifier)
        envelope = make_envelope(members, two_rows.dataset, two_rows.classifier)
        question = question_on(two_rows, 1)
        assert coherent_from_envelope(envelope, question) == parse_all(theory, "f2=1")

    def test_envelope_conditions(self, two_rows):
        theory = two_rows.theory
        dataset, classifier = two_rows.dataset, two_rows.classifier
        assert is_envelope(parse_all(theory, "f2=0"), dataset, classifier).failed == EnvelopeCondition.COVERAGE
        assert is_envelope(parse_all(theory, "f1=0", "f2=1"), dataset, classifier).failed == EnvelopeCondition.COHERENCE
        assert is_envelope(parse_all(theory, "f2=0", "f2=1", "f1=1"), dataset, classifier).failed == EnvelopeCondition.MEMBERSHIP
        with pytest.raises(ContractError):
            make_envelope(parse_all(theory, "f2=0"), dataset, classifier)

    def test_catalogue_and_maximal_envelopes(self, two_rows):
        theory = two_rows.theory
        catalogue = envelope_catalogue(two_rows.dataset, two_rows.classifier)
        members = [set(envelope) for envelope in catalogue]
        for named in (
            parse_all(theory, "f1=0,f2=0", "f1=0,f2=1"),
            parse_all(theory, "f2=0", "f2=1"),
            parse_all(theory, "f2=0", "f1=0,f2=1"),
            parse_all(theory, "f2=1", "f1=0,f2=0"),
            parse_all(theory, "f1=0,f2=0", "f1=0,f2=1", "f2=0", "f2=1"),
        ):
            assert named in members
        assert len(catalogue) == 9
        assert [len(envelope) for envelope in catalogue] == [2, 2, 2, 2, 3, 3, 3, 3, 4]
        maximal = maximal_envelopes(two_rows.dataset, two_rows.classifier)
        assert len(maximal) == 1
        assert set(maximal[0]) == set(irr_envelope(two_rows.dataset, two_rows.classifier))

    def test_envelope_decision_list(self, two_rows):
        envelope = irr_envelope(two_rows.dataset, two_rows.classifier)
        sigma = sigma_from_envelope(envelope, two_rows.dataset, two_rows.classifier)
        theory = two_rows.theory
        assert [sigma.predict(theory.instance(values)) for values in (["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"])] == [
            "0", "1", "0", "1",
        ]
        assert sigma.to_lines() == ["f2=0 -> 0", "f2=1 -> 1", "default: 0"]

    def test_single_literal_envelope_gives_one_rule_per_member(self, two_rows):
        envelope = make_envelope(parse_all(two_rows.theory, "f2=0", "f2=1"), two_rows.dataset, two_rows.classifier)
        sigma = sigma_from_envelope(envelope, two_rows.dataset, two_rows.classifier)
        assert sigma.to_lines() == ["f2=0 -> 0", "f2=1 -> 1", "default: 0"]

    def test_envelope_of_another_dataset_is_refused(self, two_rows, three_rows):
        envelope = irr_envelope(two_rows.dataset, two_rows.classifier)
        with pytest.raises(ContractError):
            coherent_from_envelope(envelope, question_on(three_rows, 0))


class TestThreeRows:

    def test_irrefutable_envelope(self, three_rows):
        theory = three_rows.theory
        envelope = irr_envelope(three_rows.dataset, three_rows.classifier)
        assert set(envelope) == parse_all(theory, "f2=0", "f1=0,f2=0", "f1=1,f2=0", "f1=1,f2=1")

    def test_membership_without_the_envelope(self, three_rows):
        theory = three_rows.theory
        question = question_on(three_rows, 0)
        assert not is_irrefutable(question, theory.parse_assignment("f1=0"))
        assert is_irrefutable(question, theory.parse_assignment("f2=0"))
        assert lir_explain(question_on(three_rows, 2)) == parse_all(theory, "f1=1,f2=1")

    def test_minimal_irrefutable_explanation(self, three_rows):
        question = question_on(three_rows, 0)
        assert find_minimal_irrefutable(question) == three_rows.theory.parse_assignment("f2=0")

    def test_candidate_tests_are_counted(self, three_rows):
        question = question_on(three_rows, 0)
        counter = ScanCounter()
        is_irrefutable(question, three_rows.theory.parse_assignment("f2=0"), counter)
        # one candidate per differently labelled instance
        assert counter.candidate_tests == 1
        assert counter.covers_checks == 2 * three_rows.dataset.m


def test_dataset_is_always_an_envelope(three_rows):
    envelope = dataset_envelope(three_rows.dataset, three_rows.classifier)
    assert set(envelope) == set(three_rows.dataset)


@given(contexts())
def test_irrefutable_membership_matches_the_envelope(context):
    dataset, classifier = context
    envelope = irr_envelope(dataset, classifier)
    for target in dataset:
        question = make_question(dataset.theory, classifier, dataset, target)
        for subset in subsets_of(target):
            assert is_irrefutable(question, subset) == (subset in envelope)


@given(contexts())
def test_built_envelopes_satisfy_the_envelope_conditions(context):
    dataset, classifier = context
    for envelope in (irr_envelope(dataset, classifier), greedy_envelope(dataset, classifier)):
        assert is_envelope(list(envelope), dataset, classifier)
        sigma = sigma_from_envelope(envelope, dataset, classifier)
        assert all(sigma.predict(instance) == classifier.predict(instance) for instance in dataset)
        assert not any(
            first != second and first.label == second.label and covers(first.premise, second.premise)
            for first in sigma.rules for second in sigma.rules
        )
        space = Dataset(dataset.theory, enumerate_feature_space(dataset.theory, 2 ** 10))
        for point in space:
            whole = make_question(dataset.theory, sigma, space, point)
            assert all(is_dwaxp(whole, member) for member in envelope if covers(member, point))


@given(contexts(max_features=2))
def test_irrefutable_envelope_is_inside_every_maximal_envelope(context):
    dataset, classifier = context
    envelope = set(irr_envelope(dataset, classifier))
    maximal = maximal_envelopes(dataset, classifier)
    assert maximal
    assert all(envelope <= set(candidate) for candidate in maximal)
    assert envelope == set.intersection(*(set(candidate) for candidate in maximal))


@given(contexts())
def test_minimal_irrefutable_explanation_is_irreducible(context):
    dataset, classifier = context
    for target in dataset:
        question = make_question(dataset.theory, classifier, dataset, target)
        found = find_minimal_irrefutable(question)
        assert is_irrefutable(question, found)
        assert covers(found, target)
        assert found in all_dwaxp(question)
        assert all(not is_irrefutable(question, found.without(feature)) for feature in found.features)
