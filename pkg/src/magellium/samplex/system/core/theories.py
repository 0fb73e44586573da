"""Classification theories, literals, partial assignments and instances.

Features and values are identified by their declaration index inside a
:class:`Theory`; names only matter for parsing and printing. Assignments are
stored as one slot per feature (``None`` when the feature is free), which
makes covering and consistency tests a single zip over the slots.
"""
from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Iterable, Iterator, Mapping, Sequence

from magellium.samplex.system.common.errors import (
    InvalidLiteralError,
    TheoryMismatchError,
    ValidationError,
    check_cap,
)


@dataclass(frozen=True)
class Theory:
    features: tuple[str, ...]
    domains: tuple[tuple[str, ...], ...]
    classes: tuple[str, ...]
    _feature_index: Mapping[str, int] = field(init=False, repr=False, compare=False, hash=False)
    _value_index: tuple[Mapping[str, int], ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if (len(self.features) == 0):
            raise ValidationError("a theory needs at least one feature")
        if (len(set(self.features)) != len(self.features)):
            raise ValidationError("feature names must be distinct", features=list(self.features))
        if (len(self.domains) != len(self.features)):
            raise ValidationError("every feature needs a domain", features=list(self.features))
        for name, domain in zip(self.features, self.domains):
            if (len(domain) < 2):
                raise ValidationError(f"domain of feature '{name}' needs at least two values", feature=name)
            if (len(set(domain)) != len(domain)):
                raise ValidationError(f"domain of feature '{name}' has repeated values", feature=name)
        if (len(self.classes) < 2):
            raise ValidationError("a theory needs at least two classes", classes=list(self.classes))
        if (len(set(self.classes)) != len(self.classes)):
            raise ValidationError("class labels must be distinct", classes=list(self.classes))
        object.__setattr__(self, "_feature_index", {name: index for index, name in enumerate(self.features)})
        object.__setattr__(
            self,
            "_value_index",
            tuple({value: index for index, value in enumerate(domain)} for domain in self.domains),
        )

    @staticmethod
    def build(features: Sequence[str], domains: Mapping[str, Sequence[str]], classes: Sequence[str]) -> "Theory":
        missing = [name for name in features if name not in domains]
        if (missing):
            raise ValidationError("every feature needs a domain entry", missing=missing)
        return Theory(
            features=tuple(str(name) for name in features),
            domains=tuple(tuple(str(value) for value in domains[name]) for name in features),
            classes=tuple(str(label) for label in classes),
        )

    @staticmethod
    def binary(n: int, classes: Sequence[str] = ("0", "1")) -> "Theory":
        return Theory(
            features=tuple(f"f{index + 1}" for index in range(n)),
            domains=tuple(("0", "1") for _ in range(n)),
            classes=tuple(classes),
        )

    @property
    def n(self) -> int:
        return len(self.features)

    def feature_index(self, feature: str) -> int:
        index: int | None = self._feature_index.get(feature)
        if (index is None):
            raise InvalidLiteralError(f"unknown feature '{feature}'", feature=feature)
        return index

    def value_index(self, feature: int, value: str) -> int:
        index: int | None = self._value_index[feature].get(str(value))
        if (index is None):
            raise InvalidLiteralError(
                f"value '{value}' is not in the domain of feature '{self.features[feature]}'",
                feature=self.features[feature],
                value=value,
            )
        return index

    def feature_space_size(self) -> int:
        return prod(len(domain) for domain in self.domains)

    def literal(self, feature: str | int, value: str) -> "Literal":
        index: int = feature if isinstance(feature, int) else self.feature_index(feature)
        if (not 0 <= index < self.n):
            raise InvalidLiteralError(f"feature index {index} out of range", feature=index)
        return Literal(index, self.value_index(index, value))

    def assignment(self, pairs: Mapping[str, str] | Iterable[tuple[str, str]] = ()) -> "PartialAssignment":
        items = pairs.items() if isinstance(pairs, Mapping) else pairs
        return PartialAssignment.from_literals(self, (self.literal(name, value) for name, value in items))

    def instance(self, values: Sequence[str]) -> "Instance":
        if (len(values) != self.n):
            raise InvalidLiteralError(
                f"an instance needs {self.n} values, got {len(values)}", values=list(values)
            )
        return Instance(self, tuple(self.value_index(index, value) for index, value in enumerate(values)))

    def parse_assignment(self, text: str) -> "PartialAssignment":
        """Inverse of :meth:`PartialAssignment.to_text`."""
        stripped = text.strip()
        if (stripped in ("{}", "")):
            return PartialAssignment.empty(self)
        pairs: list[tuple[str, str]] = []
        for token in stripped.split(","):
            name, separator, value = token.partition("=")
            if (not separator):
                raise InvalidLiteralError(f"literal '{token}' is not of the form feature=value", literal=token)
            pairs.append((name.strip(), value.strip()))
        return self.assignment(pairs)

    def canonical_lines(self) -> list[str]:
        lines = [f"{name}: {','.join(domain)}" for name, domain in zip(self.features, self.domains)]
        lines.append(f"classes: {','.join(self.classes)}")
        return lines


@dataclass(frozen=True, order=True)
class Literal:
    feature: int
    value: int

    def to_text(self, theory: Theory) -> str:
        return f"{theory.features[self.feature]}={theory.domains[self.feature][self.value]}"


class PartialAssignment:
    """A consistent literal set, at most one literal per feature."""

    __slots__ = ("_theory", "_values", "_hash")

    def __init__(self, theory: Theory, values: Sequence[int | None]):
        if (len(values) != theory.n):
            raise InvalidLiteralError("assignment width does not match the theory", width=len(values))
        for index, value in enumerate(values):
            if (value is not None and not 0 <= value < len(theory.domains[index])):
                raise InvalidLiteralError(f"value index {value} out of range for '{theory.features[index]}'")
        self._theory = theory
        self._values: tuple[int | None, ...] = tuple(values)
        self._hash = hash(self._values)

    @classmethod
    def from_literals(cls, theory: Theory, literals: Iterable[Literal]) -> "PartialAssignment":
        literal_list = list(literals)
        if (not is_consistent(literal_list, theory)):
            raise InvalidLiteralError(
                "literal set is inconsistent", literals=[literal.to_text(theory) for literal in literal_list]
            )
        values: list[int | None] = [None] * theory.n
        for literal in literal_list:
            values[literal.feature] = literal.value
        return PartialAssignment(theory, values)

    @classmethod
    def empty(cls, theory: Theory) -> "PartialAssignment":
        return PartialAssignment(theory, (None,) * theory.n)

    @property
    def theory(self) -> Theory:
        return self._theory

    @property
    def values(self) -> tuple[int | None, ...]:
        return self._values

    @property
    def literals(self) -> tuple[Literal, ...]:
        return tuple(Literal(index, value) for index, value in enumerate(self._values) if value is not None)

    @property
    def features(self) -> frozenset[int]:
        return frozenset(index for index, value in enumerate(self._values) if value is not None)

    @property
    def sort_key(self) -> tuple[tuple[int, int], ...]:
        return tuple((index, value) for index, value in enumerate(self._values) if value is not None)

    def is_complete(self) -> bool:
        return all(value is not None for value in self._values)

    def without(self, feature: int) -> "PartialAssignment":
        values = list(self._values)
        values[feature] = None
        return PartialAssignment(self._theory, values)

    def restricted_to(self, features: Iterable[int]) -> "PartialAssignment":
        keep = set(features)
        return PartialAssignment(
            self._theory, [value if index in keep else None for index, value in enumerate(self._values)]
        )

    def as_assignment(self) -> "PartialAssignment":
        return PartialAssignment(self._theory, self._values)

    def to_text(self) -> str:
        if (len(self) == 0):
            return "{}"
        return ",".join(literal.to_text(self._theory) for literal in self.literals)

    def to_strings(self) -> list[str]:
        return [literal.to_text(self._theory) for literal in self.literals]

    def __len__(self) -> int:
        return sum(1 for value in self._values if value is not None)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __contains__(self, literal: object) -> bool:
        return isinstance(literal, Literal) and self._values[literal.feature] == literal.value

    def __eq__(self, other: object) -> bool:
        if (not isinstance(other, PartialAssignment)):
            return NotImplemented
        return self._values == other._values and (self._theory is other._theory or self._theory == other._theory)

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "PartialAssignment") -> bool:
        return self.sort_key < other.sort_key

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_text()})"


class Instance(PartialAssignment):
    """A partial assignment covering every feature of its theory."""

    __slots__ = ()

    def __init__(self, theory: Theory, values: Sequence[int]):
        if (any(value is None for value in values)):
            raise InvalidLiteralError("an instance must assign every feature")
        super().__init__(theory, values)

    def row(self) -> tuple[str, ...]:
        return tuple(self.theory.domains[index][value] for index, value in enumerate(self.values))


def is_consistent(literals: Iterable[Literal], theory: Theory) -> bool:
    seen: dict[int, int] = {}
    for literal in literals:
        if (not 0 <= literal.feature < theory.n):
            raise InvalidLiteralError(f"unknown feature index {literal.feature}", feature=literal.feature)
        if (not 0 <= literal.value < len(theory.domains[literal.feature])):
            raise InvalidLiteralError(
                f"value index {literal.value} out of range for '{theory.features[literal.feature]}'",
                feature=theory.features[literal.feature],
            )
        previous: int | None = seen.setdefault(literal.feature, literal.value)
        if (previous != literal.value):
            return False
    return True


def _same_theory(left: PartialAssignment, right: PartialAssignment) -> None:
    if (left.theory is not right.theory and left.theory != right.theory):
        raise TheoryMismatchError("assignments belong to different theories")


def covers(explanation: PartialAssignment, instance: PartialAssignment) -> bool:
    """True iff every literal of ``explanation`` appears in ``instance``."""
    _same_theory(explanation, instance)
    return all(value is None or value == other for value, other in zip(explanation.values, instance.values))


def union_consistent(left: PartialAssignment, right: PartialAssignment) -> bool:
    _same_theory(left, right)
    return all(a is None or b is None or a == b for a, b in zip(left.values, right.values))


def enumerate_feature_space(theory: Theory, cap: int) -> Iterator[Instance]:
    """Every instance once, lexicographic by (feature index, value index).

    The cap is checked eagerly, before the first instance is produced.
    """
    check_cap("feature space", theory.feature_space_size(), cap)
    return (Instance(theory, values) for values in product(*(range(len(domain)) for domain in theory.domains)))
