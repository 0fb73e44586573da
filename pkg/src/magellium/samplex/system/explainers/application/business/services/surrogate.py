"""ID3 surrogate trees and explanations computed on them.

A surrogate is fitted once per (dataset, classifier) pair and agrees with the
classifier on every dataset instance. Weak abductive explanations of the tree
over the whole feature space are decided by a single traversal of the tree.
"""
import math
import threading
from typing import Iterable, Mapping, Sequence

import numpy as np

from magellium.samplex.system.common.errors import ValidationError, check_cap
from magellium.samplex.system.common.logger import LoggerFactory
from magellium.samplex.system.common.settings import DEFAULT_CAP
from magellium.samplex.system.core.classifiers import Classifier
from magellium.samplex.system.core.datasets import Dataset
from magellium.samplex.system.core.decision_lists import DecisionListClassifier, DecisionRule
from magellium.samplex.system.core.decision_trees import DecisionTree, Leaf, Node, SplitCriterion, TreeNode, dt_predict
from magellium.samplex.system.core.explanations import Explanation, ExplanationSet
from magellium.samplex.system.core.questions import Question
from magellium.samplex.system.core.theories import Instance, PartialAssignment, Theory, covers
from magellium.samplex.system.explainers.application.business.services.abductive import (
    deletion_sequence,
    feature_space_dwaxps,
    subsets_of,
)


LOGGER = LoggerFactory.get_logger(__name__)

RELATIVE_TOLERANCE = 1e-9
ABSOLUTE_TOLERANCE = 1e-12


def entropy(labels: np.ndarray, n_classes: int) -> float:
    if (labels.size == 0):
        return 0.0
    counts = np.bincount(labels, minlength=n_classes)
    probabilities = counts[counts > 0] / labels.size
    return float(-np.sum(probabilities * np.log(probabilities)))


def _majority(labels: np.ndarray, n_classes: int) -> int:
    # argmax returns the first maximum, i.e. the earliest declared class
    return int(np.argmax(np.bincount(labels, minlength=n_classes)))


def _split_scores(column: np.ndarray, labels: np.ndarray, arity: int, n_classes: int) -> tuple[float, float]:
    """(information gain, gain ratio) of splitting ``labels`` on ``column``."""
    total = labels.size
    conditional = 0.0
    split_info = 0.0
    for value in range(arity):
        mask = column == value
        size = int(mask.sum())
        if (size == 0):
            continue
        weight = size / total
        conditional += weight * entropy(labels[mask], n_classes)
        split_info -= weight * math.log(weight)
    gain = entropy(labels, n_classes) - conditional
    ratio = gain / split_info if split_info > 0 else 0.0
    return gain, ratio


def _same(left: float, right: float) -> bool:
    return math.isclose(left, right, rel_tol=RELATIVE_TOLERANCE, abs_tol=ABSOLUTE_TOLERANCE)


def _best_feature(
    rows: np.ndarray,
    labels: np.ndarray,
    unused: Sequence[int],
    theory: Theory,
    criterion: SplitCriterion,
) -> int | None:
    best: int | None = None
    best_score = best_gain = 0.0
    for feature in unused:
        column = rows[:, feature]
        if (np.unique(column).size < 2):
            continue
        gain, ratio = _split_scores(column, labels, len(theory.domains[feature]), len(theory.classes))
        score = ratio if criterion is SplitCriterion.GAIN_RATIO else gain
        if (best is None):
            best, best_score, best_gain = feature, score, gain
            continue
        if (_same(score, best_score)):
            if (gain > best_gain and not _same(gain, best_gain)):
                best, best_score, best_gain = feature, score, gain
        elif (score > best_score):
            best, best_score, best_gain = feature, score, gain
    return best


def id3_fit(
    dataset: Dataset,
    classifier: Classifier,
    criterion: SplitCriterion = SplitCriterion.GAIN_RATIO,
    multiplicity: Mapping[Instance, int] | None = None,
) -> DecisionTree:
    """Fits a multiway tree that reproduces ``classifier`` on every dataset instance.

    ``multiplicity`` counts how many raw rows each instance stands for; split
    scores and majorities are computed over those rows. Instances it does not
    list count once.
    """
    theory = dataset.theory
    n_classes = len(theory.classes)
    class_index = {label: index for index, label in enumerate(theory.classes)}
    rows = np.array([instance.values for instance in dataset], dtype=np.int64).reshape(dataset.m, theory.n)
    labels = np.array([class_index[classifier.predict(instance)] for instance in dataset], dtype=np.int64)
    if (multiplicity is not None):
        counts = np.array([multiplicity.get(instance, 1) for instance in dataset], dtype=np.int64)
        if (np.any(counts < 1)):
            raise ValidationError("row multiplicities must be positive")
        rows = np.repeat(rows, counts, axis=0)
        labels = np.repeat(labels, counts)

    def grow(selection: np.ndarray, unused: tuple[int, ...]) -> TreeNode:
        node_labels = labels[selection]
        majority = _majority(node_labels, n_classes)
        if (np.unique(node_labels).size <= 1):
            return Leaf(theory.classes[majority])
        node_rows = rows[selection]
        feature = _best_feature(node_rows, node_labels, unused, theory, criterion)
        if (feature is None):
            return Leaf(theory.classes[majority])
        remaining = tuple(other for other in unused if other != feature)
        children: list[TreeNode] = []
        for value in range(len(theory.domains[feature])):
            branch = selection[node_rows[:, feature] == value]
            if (branch.size == 0):
                children.append(Leaf(theory.classes[majority]))
            else:
                children.append(grow(branch, remaining))
        return Node(feature, tuple(children))

    if (dataset.m == 0):
        return DecisionTree(theory, Leaf(theory.classes[0]))
    tree = DecisionTree(theory, grow(np.arange(labels.size), tuple(range(theory.n))))
    LOGGER.debug(
        "ID3 (%s) tree fitted on %d instances: %d nodes, depth %d, root %s",
        criterion.value, dataset.m, tree.size(), tree.depth(), tree.root_feature,
    )
    return tree


def is_dwaxp_tree(tree: DecisionTree, target: Instance, explanation: PartialAssignment) -> bool:
    if (not covers(explanation, target)):
        return False
    expected = dt_predict(tree, target)
    stack: list[TreeNode] = [tree.root]
    while stack:
        node = stack.pop()
        if (isinstance(node, Leaf)):
            if (node.label != expected):
                return False
            continue
        fixed = explanation.values[node.feature]
        if (fixed is None):
            stack.extend(node.children)
        else:
            stack.append(node.children[fixed])
    return True


def find_axp_tree(tree: DecisionTree, target: Instance, deletion_order: Sequence[int] | None = None) -> Explanation:
    explanation: PartialAssignment = target.as_assignment()
    for feature in deletion_sequence(tree.theory.n, deletion_order):
        candidate = explanation.without(feature)
        if (is_dwaxp_tree(tree, target, candidate)):
            explanation = candidate
    return explanation


def lsu_explain(question: Question, tree: DecisionTree | None = None, cap: int = DEFAULT_CAP) -> ExplanationSet:
    check_cap("subset enumeration", 2 ** question.theory.n, cap)
    surrogate = tree if tree is not None else id3_fit(question.dataset, question.classifier)
    found = [subset for subset in subsets_of(question.target, cap) if is_dwaxp_tree(surrogate, question.target, subset)]
    return ExplanationSet(found, explainer="Lsu", question_digest=question.digest())


def surrogate_explain(question: Question, surrogate: Classifier, cap: int = DEFAULT_CAP) -> ExplanationSet:
    """Lsu for an arbitrary surrogate; trees are traversed, anything else is enumerated."""
    if (isinstance(surrogate, DecisionTree)):
        return lsu_explain(question, surrogate, cap)
    found = feature_space_dwaxps(surrogate, question.target, cap)
    return ExplanationSet(found, explainer="Lsu", question_digest=question.digest())


def tree_rules(tree: DecisionTree) -> list[DecisionRule]:
    """One rule per leaf; premises are pairwise inconsistent."""
    return [DecisionRule(premise, label) for premise, label in tree.paths()]


def rules_to_decision_list(tree: DecisionTree) -> DecisionListClassifier:
    return DecisionListClassifier(tree.theory, tree_rules(tree), tree.theory.classes[0])


def tree_accuracy(tree: Classifier, rows: Iterable[tuple[Instance, str]]) -> tuple[int, int]:
    """(correct, total) over raw labelled rows, duplicates included."""
    correct = total = 0
    for instance, label in rows:
        total += 1
        if (tree.predict(instance) == label):
            correct += 1
    return correct, total


class SurrogateCache:
    """One fitted tree per (dataset digest, classifier digest, criterion, row multiplicities)."""

    def __init__(self, criterion: SplitCriterion = SplitCriterion.GAIN_RATIO):
        self.__criterion = criterion
        self.__trees: dict[tuple, DecisionTree] = {}
        self.__lock = threading.Lock()

    @property
    def criterion(self) -> SplitCriterion:
        return self.__criterion

    def tree_for(self, dataset: Dataset, classifier: Classifier, multiplicity: Mapping[Instance, int] | None = None) -> DecisionTree:
        weights = None if multiplicity is None else tuple(multiplicity.get(instance, 1) for instance in dataset)
        key = (dataset.digest(), classifier.digest_on(dataset), self.__criterion, weights)
        with self.__lock:
            tree: DecisionTree | None = self.__trees.get(key)
        if (tree is None):
            tree = id3_fit(dataset, classifier, self.__criterion, multiplicity)
            with self.__lock:
                tree = self.__trees.setdefault(key, tree)
        return tree

    def __len__(self) -> int:
        return len(self.__trees)
