from collections.abc import Set
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Mapping, TypeAlias

from magellium.samplex.system.core.theories import Instance, PartialAssignment, covers


Explanation: TypeAlias = PartialAssignment


@dataclass(frozen=True)
class DwaxpVerdict:
    """Outcome of a membership test; ``witness`` is the refuting instance, if any."""
    holds: bool
    witness: Instance | None = None

    def __bool__(self) -> bool:
        return self.holds


class ExplanationSet:
    """Duplicate-free explanations in canonical order, with provenance.

    Two sets compare equal when they hold the same explanations, whatever
    their provenance. Comparison against any ``collections.abc.Set`` of
    assignments is supported as well.
    """

    __slots__ = ("_members", "_index", "_explainer", "_question_digest", "_labels")

    def __init__(
        self,
        members: Iterable[PartialAssignment] = (),
        explainer: str = "",
        question_digest: str = "",
        labels: Mapping[PartialAssignment, str] | None = None,
    ):
        unique: frozenset[PartialAssignment] = frozenset(members)
        self._members: tuple[PartialAssignment, ...] = tuple(sorted(unique, key=lambda member: member.sort_key))
        self._index = unique
        self._explainer = explainer
        self._question_digest = question_digest
        self._labels: dict[PartialAssignment, str] = dict(labels or {})

    @property
    def explainer(self) -> str:
        return self._explainer

    @property
    def question_digest(self) -> str:
        return self._question_digest

    @property
    def members(self) -> tuple[PartialAssignment, ...]:
        return self._members

    def label_of(self, member: PartialAssignment) -> str | None:
        return self._labels.get(member)

    def as_frozenset(self) -> frozenset[PartialAssignment]:
        return self._index

    def covering(self, instance: PartialAssignment) -> "ExplanationSet":
        return ExplanationSet(
            (member for member in self._members if covers(member, instance)),
            explainer=self._explainer,
            question_digest=self._question_digest,
            labels=self._labels,
        )

    def tagged(self, explainer: str, question_digest: str = "") -> "ExplanationSet":
        return ExplanationSet(self._members, explainer, question_digest or self._question_digest, self._labels)

    def issubset(self, other: "ExplanationSet | Set") -> bool:
        return self._index <= _as_frozenset(other)

    def to_document(self) -> dict[str, Any]:
        explanations: list[Any] = []
        for member in self._members:
            literals = member.to_strings()
            label = self._labels.get(member)
            explanations.append(literals if label is None else {"literals": literals, "class": label})
        return {
            "explainer": self._explainer,
            "question": self._question_digest,
            "count": len(self._members),
            "explanations": explanations,
        }

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[PartialAssignment]:
        return iter(self._members)

    def __contains__(self, member: object) -> bool:
        return member in self._index

    def __bool__(self) -> bool:
        return bool(self._members)

    def __eq__(self, other: object) -> bool:
        if (isinstance(other, (ExplanationSet, Set))):
            return self._index == _as_frozenset(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._index)

    def __repr__(self) -> str:
        return "{" + "; ".join(member.to_text() for member in self._members) + "}"


def _as_frozenset(value: "ExplanationSet | Set") -> frozenset:
    if (isinstance(value, ExplanationSet)):
        return value.as_frozenset()
    return frozenset(value)
