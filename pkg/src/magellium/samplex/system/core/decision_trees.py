from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterator, Mapping

from magellium.samplex.system.common.errors import DatasetFormatError
from magellium.samplex.system.core.classifiers import Classifier
from magellium.samplex.system.core.theories import Instance, PartialAssignment, Theory


class SplitCriterion(Enum):
    GAIN_RATIO = "gain-ratio"
    INFORMATION_GAIN = "information-gain"

    @staticmethod
    def of(value: str) -> "SplitCriterion | None":
        criterion: SplitCriterion | None = None
        for member in SplitCriterion:
            if member.value.lower() == value.lower():
                criterion = member
                break
        return criterion


@dataclass(frozen=True)
class Leaf:
    label: str


@dataclass(frozen=True)
class Node:
    feature: int
    children: tuple["Leaf | Node", ...]


TreeNode = Leaf | Node


class DecisionTree(Classifier):
    """Multiway decision tree, one child per domain value of the tested feature."""

    def __init__(self, theory: Theory, root: TreeNode):
        super().__init__(theory)
        self.__root = root

    @property
    def root(self) -> TreeNode:
        return self.__root

    @property
    def root_feature(self) -> str | None:
        if (isinstance(self.__root, Leaf)):
            return None
        return self.theory.features[self.__root.feature]

    def predict(self, instance: Instance) -> str:
        return dt_predict(self, instance)

    def nodes(self) -> Iterator[TreeNode]:
        stack: list[TreeNode] = [self.__root]
        while stack:
            node = stack.pop()
            yield node
            if (isinstance(node, Node)):
                stack.extend(reversed(node.children))

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def depth(self) -> int:
        def walk(node: TreeNode) -> int:
            if (isinstance(node, Leaf)):
                return 0
            return 1 + max(walk(child) for child in node.children)
        return walk(self.__root)

    def paths(self) -> Iterator[tuple[PartialAssignment, str]]:
        """Every root-to-leaf path as (premise, class), left to right."""
        theory = self.theory

        def walk(node: TreeNode, values: list[int | None]) -> Iterator[tuple[PartialAssignment, str]]:
            if (isinstance(node, Leaf)):
                yield PartialAssignment(theory, values), node.label
                return
            for value, child in enumerate(node.children):
                values[node.feature] = value
                yield from walk(child, values)
            values[node.feature] = None

        yield from walk(self.__root, [None] * theory.n)

    def to_document(self) -> dict[str, Any]:
        theory = self.theory

        def walk(node: TreeNode) -> dict[str, Any]:
            if (isinstance(node, Leaf)):
                return {"class": node.label}
            return {
                "feature": theory.features[node.feature],
                "branches": {
                    theory.domains[node.feature][value]: walk(child) for value, child in enumerate(node.children)
                },
            }

        return walk(self.__root)

    @staticmethod
    def from_document(theory: Theory, document: Mapping[str, Any]) -> "DecisionTree":
        def walk(entry: Mapping[str, Any]) -> TreeNode:
            if ("class" in entry):
                label = str(entry["class"])
                if (label not in theory.classes):
                    raise DatasetFormatError(f"unknown class '{label}' in tree document")
                return Leaf(label)
            feature = theory.feature_index(str(entry["feature"]))
            branches: Mapping[str, Any] = {str(key): value for key, value in entry["branches"].items()}
            if (set(branches) != set(theory.domains[feature])):
                raise DatasetFormatError(f"tree node on '{theory.features[feature]}' must branch on its whole domain")
            return Node(feature, tuple(walk(branches[value]) for value in theory.domains[feature]))

        return DecisionTree(theory, walk(document))


def dt_predict(tree: DecisionTree, instance: Instance) -> str:
    node: TreeNode = tree.root
    while isinstance(node, Node):
        node = node.children[instance.values[node.feature]]
    return node.label
