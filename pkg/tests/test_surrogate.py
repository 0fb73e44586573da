import math

import numpy as np
import pytest
import yaml
from hypothesis import given

from magellium.samplex.system.common.errors import DatasetFormatError, ValidationError
from magellium.samplex.system.core.classifiers import TableClassifier
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.decision_lists import DecisionListClassifier, DecisionRule
from magellium.samplex.system.core.decision_trees import DecisionTree, Leaf, Node, SplitCriterion, dt_predict
from magellium.samplex.system.core.questions import make_question
from magellium.samplex.system.core.theories import Theory, covers, enumerate_feature_space, union_consistent
from magellium.samplex.system.explainers.application.business.services.abductive import is_dwaxp, subsets_of
from magellium.samplex.system.explainers.application.business.services.coherence import is_coherent_set
from magellium.samplex.system.explainers.application.business.services.surrogate import (
    SurrogateCache,
    entropy,
    find_axp_tree,
    id3_fit,
    is_dwaxp_tree,
    lsu_explain,
    rules_to_decision_list,
    surrogate_explain,
    tree_accuracy,
    tree_rules,
)

from tests.conftest import contexts, question_on


def test_entropy_of_label_vectors():
    assert entropy(np.array([0, 0, 1, 1]), 2) == pytest.approx(math.log(2))
    assert entropy(np.array([1, 1, 1]), 3) == pytest.approx(0.0)
    assert entropy(np.array([0, 1, 2, 3]), 4) == pytest.approx(math.log(4))
    assert entropy(np.array([], dtype=np.int64), 2) == 0.0


def test_tree_on_three_rows_tests_the_second_feature(three_rows):
    tree = id3_fit(three_rows.dataset, three_rows.classifier)
    assert tree.root_feature == "f2"
    assert tree_accuracy(tree, three_rows.rows) == (3, 3)
    assert tree.depth() >= 1


def test_single_class_dataset_gives_a_leaf():
    theory = Theory.binary(2)
    dataset = Dataset.of_rows(theory, [["0", "0"], ["1", "1"]])
    classifier = TableClassifier(theory, {instance: "1" for instance in dataset})
    tree = id3_fit(dataset, classifier)
    assert tree.root == Leaf("1")
    assert tree.root_feature is None
    assert tree.size() == 1


def test_multiplicity_must_be_positive(three_rows):
    with pytest.raises(ValidationError):
        id3_fit(three_rows.dataset, three_rows.classifier, multiplicity={three_rows.dataset.instances[0]: 0})


def test_tree_explanations_follow_the_paths():
    theory = Theory.binary(2)
    # f1 ? (f2 ? 1 : 0) : 0
    tree = DecisionTree(theory, Node(0, (Leaf("0"), Node(1, (Leaf("0"), Leaf("1"))))))
    zero, positive = theory.instance(["0", "1"]), theory.instance(["1", "1"])
    assert is_dwaxp_tree(tree, zero, theory.parse_assignment("f1=0"))
    assert not is_dwaxp_tree(tree, zero, theory.parse_assignment("f2=1"))
    assert not is_dwaxp_tree(tree, zero, theory.parse_assignment("f1=1"))
    assert find_axp_tree(tree, zero) == theory.parse_assignment("f1=0")
    assert find_axp_tree(tree, positive) == positive.as_assignment()
    assert dt_predict(tree, positive) == "1"
    assert dt_predict(tree, zero) == tree.predict(zero) == "0"
    assert [rule.to_line() for rule in tree_rules(tree)] == ["f1=0 -> 0", "f1=1,f2=0 -> 0", "f1=1,f2=1 -> 1"]


def test_tree_documents_read_back():
    theory = Theory.binary(2)
    tree = DecisionTree(theory, Node(1, (Leaf("0"), Leaf("1"))))
    document = tree.to_document()
    assert document == {"feature": "f2", "branches": {"0": {"class": "0"}, "1": {"class": "1"}}}
    assert DecisionTree.from_document(theory, document).root == tree.root
    with pytest.raises(DatasetFormatError):
        DecisionTree.from_document(theory, {"feature": "f2", "branches": {"0": {"class": "0"}}})
    with pytest.raises(DatasetFormatError):
        DecisionTree.from_document(theory, {"class": "2"})


def test_tree_document_read_back_from_yaml_with_integer_keys():
    theory = Theory.binary(2)
    document = yaml.safe_load("feature: f2\nbranches:\n  0: {class: 0}\n  1: {class: 1}\n")
    assert list(document["branches"]) == [0, 1]
    tree = DecisionTree.from_document(theory, document)
    assert tree.root == Node(1, (Leaf("0"), Leaf("1")))
    assert dt_predict(tree, theory.instance(["0", "1"])) == "1"


def test_decision_list_first_match_wins():
    theory = Theory.binary(2)
    rules = [DecisionRule(theory.parse_assignment("f1=1"), "1"), DecisionRule(theory.parse_assignment("f2=1"), "0")]
    classifier = DecisionListClassifier(theory, rules, "0")
    assert classifier.predict(theory.instance(["1", "1"])) == "1"
    assert classifier.predict(theory.instance(["0", "1"])) == "0"
    assert classifier.to_lines() == ["f1=1 -> 1", "f2=1 -> 0", "default: 0"]
    with pytest.raises(ValidationError):
        DecisionListClassifier(theory, rules, "2")


def test_surrogate_cache_reuses_trees(three_rows):
    cache = SurrogateCache(SplitCriterion.INFORMATION_GAIN)
    first = cache.tree_for(three_rows.dataset, three_rows.classifier)
    assert cache.tree_for(three_rows.dataset, three_rows.classifier) is first
    cache.tree_for(three_rows.dataset, three_rows.classifier, three_rows.multiplicity())
    assert len(cache) == 2


class TestZoo:

    @pytest.fixture(scope="class")
    def tree(self, zoo):
        return id3_fit(zoo.dataset, zoo.classifier, SplitCriterion.GAIN_RATIO, zoo.multiplicity())

    def test_tree_splits_on_milk_and_fits_every_row(self, zoo, tree):
        assert tree.root_feature == "milk"
        assert tree_accuracy(tree, zoo.rows) == (101, 101)

    def test_antelope_is_explained_by_milk(self, zoo, tree):
        antelope = make_question(zoo.theory, zoo.classifier, zoo.dataset, zoo.rows[zoo.names.index("antelope")][0])
        assert find_axp_tree(tree, antelope.target).to_strings() == ["milk=1"]

    def test_crow_needs_feathers_and_milk(self, zoo, tree):
        crow = zoo.rows[zoo.names.index("crow")][0]
        explanation = find_axp_tree(tree, crow)
        assert sorted(explanation.to_strings()) == ["feathers=1", "milk=0"]
        assert not union_consistent(explanation, zoo.theory.parse_assignment("milk=1"))


@given(contexts())
def test_tree_reproduces_the_classifier_on_the_dataset(context):
    dataset, classifier = context
    for criterion in SplitCriterion:
        tree = id3_fit(dataset, classifier, criterion)
        assert all(tree.predict(instance) == classifier.predict(instance) for instance in dataset)


@given(contexts())
def test_tree_membership_agrees_with_the_feature_space(context):
    dataset, classifier = context
    theory = dataset.theory
    tree = id3_fit(dataset, classifier)
    space = Dataset(theory, enumerate_feature_space(theory, 2 ** 10))
    for target in dataset:
        whole = make_question(theory, tree, space, target)
        for subset in subsets_of(target):
            assert is_dwaxp_tree(tree, target, subset) == is_dwaxp(whole, subset)


@given(contexts())
def test_surrogate_explanations_are_coherent(context):
    dataset, classifier = context
    tree = id3_fit(dataset, classifier)
    members = []
    for target in dataset:
        question = make_question(dataset.theory, classifier, dataset, target)
        explanations = lsu_explain(question, tree)
        assert explanations == surrogate_explain(question, tree)
        assert all(covers(member, target) for member in explanations)
        members.extend(explanations)
    assert is_coherent_set(members, dataset, classifier)


def test_surrogate_explain_enumerates_other_classifiers(two_rows_xor):
    question = question_on(two_rows_xor, 0)
    constant = TableClassifier(
        question.theory, {instance: "0" for instance in enumerate_feature_space(question.theory, 4)}
    )
    assert surrogate_explain(question, constant) == {
        question.theory.parse_assignment(text) for text in ("{}", "f1=0", "f2=0", "f1=0,f2=0")
    }
    assert rules_to_decision_list(id3_fit(question.dataset, question.classifier)).default == "0"
