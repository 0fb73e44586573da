from typing import Iterable, Iterator, Sequence

from magellium.samplex.system.common.digests import digest_lines
from magellium.samplex.system.common.errors import TheoryMismatchError, ValidationError
from magellium.samplex.system.core.theories import Instance, Theory


class Dataset:
    """An ordered sample of distinct instances of one theory.

    Equality and hashing ignore the order: two datasets are equal when they
    hold the same instances.
    """

    __slots__ = ("_theory", "_instances", "_members", "_digest")

    def __init__(self, theory: Theory, instances: Iterable[Instance]):
        ordered: tuple[Instance, ...] = tuple(instances)
        for instance in ordered:
            if (instance.theory is not theory and instance.theory != theory):
                raise TheoryMismatchError("dataset instance belongs to another theory", instance=instance.to_text())
        members: frozenset[Instance] = frozenset(ordered)
        if (len(members) != len(ordered)):
            raise ValidationError("dataset instances must be pairwise distinct", size=len(ordered))
        self._theory = theory
        self._instances = ordered
        self._members = members
        self._digest: str | None = None

    @staticmethod
    def of_rows(theory: Theory, rows: Iterable[Sequence[str]]) -> "Dataset":
        return Dataset(theory, (theory.instance(row) for row in rows))

    @property
    def theory(self) -> Theory:
        return self._theory

    @property
    def instances(self) -> tuple[Instance, ...]:
        return self._instances

    @property
    def m(self) -> int:
        return len(self._instances)

    def digest(self) -> str:
        if (self._digest is None):
            lines = self._theory.canonical_lines()
            lines.extend(instance.to_text() for instance in sorted(self._instances))
            self._digest = digest_lines(lines)
        return self._digest

    def issubset(self, other: "Dataset") -> bool:
        return self._members <= other._members

    def with_instances(self, extra: Iterable[Instance]) -> "Dataset":
        additions = [instance for instance in extra if instance not in self._members]
        return Dataset(self._theory, self._instances + tuple(additions))

    def __len__(self) -> int:
        return len(self._instances)

    def __iter__(self) -> Iterator[Instance]:
        return iter(self._instances)

    def __contains__(self, instance: object) -> bool:
        return instance in self._members

    def __eq__(self, other: object) -> bool:
        if (not isinstance(other, Dataset)):
            return NotImplemented
        return self._members == other._members

    def __hash__(self) -> int:
        return hash(self._members)

    def __repr__(self) -> str:
        return f"Dataset({', '.join(instance.to_text() for instance in self._instances)})"
